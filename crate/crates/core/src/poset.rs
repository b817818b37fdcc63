//! Monotone maps between finite linear orders `[m] = {0 < 1 < ... < m}`.
//!
//! Besides the usual simplicial operators this module carries the factorization
//! calculus of right convex surjections and right convex injections: every
//! monotone `f: [m] -> [n]` splits uniquely as `i_f ∘ p_f` with `p_f` landing in
//! `[f(m)]` and `i_f` the standard embedding `[f(m)] -> [n]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly increasing map `[m] -> [n]`, stored by its value sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMonotoneMap")]
pub struct MonotoneMap {
    #[serde(rename = "m")]
    source: usize,
    #[serde(rename = "n")]
    target: usize,
    values: Vec<usize>,
}

#[derive(Deserialize)]
struct RawMonotoneMap {
    m: usize,
    n: usize,
    values: Vec<usize>,
}

impl TryFrom<RawMonotoneMap> for MonotoneMap {
    type Error = Error;

    fn try_from(raw: RawMonotoneMap) -> Result<Self> {
        MonotoneMap::new(raw.m, raw.n, raw.values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_right_convex_injection: bool,
    pub is_right_convex_surjection: bool,
}

impl MonotoneMap {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source + 1 {
            return Err(Error::Domain(format!(
                "a map out of [{source}] needs {} values, got {}",
                source + 1,
                values.len()
            )));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!("values not weakly increasing: {} > {}", w[0], w[1])));
        }
        if let Some(v) = values.iter().find(|&&v| v > target) {
            return Err(Error::Domain(format!("value {v} outside [{target}]")));
        }
        Ok(MonotoneMap { source, target, values })
    }

    pub(crate) fn from_values_unchecked(target: usize, values: Vec<usize>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v <= target));
        MonotoneMap { source: values.len() - 1, target, values }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { source: n, target: n, values: (0..=n).collect() }
    }

    /// The coface `δ_i: [n-1] -> [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Domain(format!("no face map δ_{i} into [{n}]")));
        }
        let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        Ok(MonotoneMap { source: n - 1, target: n, values })
    }

    /// The codegeneracy `σ_i: [n+1] -> [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Domain(format!("no degeneracy map σ_{i} onto [{n}]")));
        }
        let values = (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
        Ok(MonotoneMap { source: n + 1, target: n, values })
    }

    /// The vertex `[0] -> [n]` picking `v`.
    pub fn vertex(n: usize, v: usize) -> Result<Self> {
        MonotoneMap::new(0, n, vec![v])
    }

    pub fn constant(source: usize, target: usize, v: usize) -> Result<Self> {
        MonotoneMap::new(source, target, vec![v; source + 1])
    }

    pub fn source_size(&self) -> usize {
        self.source
    }

    pub fn target_size(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `f(m)`, the image of the top element.
    pub fn last(&self) -> usize {
        self.values[self.source]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.last() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Order-reversed map `i ↦ n - f(m - i)`.
    pub fn reversed(&self) -> Self {
        let values = (0..=self.source).map(|i| self.target - self.values[self.source - i]).collect();
        MonotoneMap { source: self.source, target: self.target, values }
    }

    /// Surjection onto the image followed by the inclusion of the image.
    pub fn image_factorization(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = Vec::with_capacity(self.values.len());
        let mut surj = Vec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            surj.push(image.len() - 1);
        }
        let r = image.len() - 1;
        (
            MonotoneMap { source: self.source, target: r, values: surj },
            MonotoneMap { source: r, target: self.target, values: image },
        )
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }

    pub fn factorize(&self) -> (MonotoneMap, MonotoneMap) {
        factorize(self)
    }
}

impl std::fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}):[{}]→[{}]", vals.join(","), self.source, self.target)
    }
}

/// `g ∘ f`, defined when `f` lands where `g` starts.
pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.target != g.source {
        return Err(Error::Composition(format!(
            "cannot compose {g} after {f}: [{}] ≠ [{}]",
            f.target, g.source
        )));
    }
    let values = f.values.iter().map(|&i| g.values[i]).collect();
    Ok(MonotoneMap { source: f.source, target: g.target, values })
}

pub fn classify(f: &MonotoneMap) -> Classification {
    let injective = f.is_injective();
    // anything below an image point must itself be in the image
    let down_closed = {
        let mut hit = vec![false; f.target + 1];
        for &v in &f.values {
            hit[v] = true;
        }
        (0..=f.target).all(|b| hit[b] || !hit[b..].iter().any(|&h| h))
    };
    Classification {
        is_right_convex_injection: injective && down_closed,
        is_right_convex_surjection: f.last() == f.target,
    }
}

/// Unique factorization `f = i_f ∘ p_f` into a right convex surjection
/// `p_f: [m] -> [f(m)]` followed by a right convex injection `i_f`.
pub fn factorize(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let top = f.last();
    let p = MonotoneMap { source: f.source, target: top, values: f.values.clone() };
    let i = standard_embedding(top, f.target).expect("f(m) ≤ n");
    (p, i)
}

/// `se(m, n): [m] -> [n]`, the inclusion `i ↦ i`.
pub fn standard_embedding(m: usize, n: usize) -> Result<MonotoneMap> {
    if m > n {
        return Err(Error::Domain(format!("standard embedding needs m ≤ n, got se({m},{n})")));
    }
    Ok(MonotoneMap { source: m, target: n, values: (0..=m).collect() })
}

/// All monotone maps `[m] -> [n]` in lexicographic order of their values.
pub fn all_maps(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(MonotoneMap { source: m, target: n, values: cur.clone() });
        // advance to the next weakly increasing sequence
        let mut k = m as isize;
        while k >= 0 && cur[k as usize] == n {
            k -= 1;
        }
        if k < 0 {
            return out;
        }
        let v = cur[k as usize] + 1;
        for slot in cur.iter_mut().skip(k as usize) {
            *slot = v;
        }
    }
}

/// All injective monotone maps `[m] -> [n]`, i.e. the `(m+1)`-subsets of `[n]`.
pub fn injections(m: usize, n: usize) -> Vec<MonotoneMap> {
    all_maps(m, n).into_iter().filter(MonotoneMap::is_injective).collect()
}

pub fn surjections(m: usize, n: usize) -> Vec<MonotoneMap> {
    all_maps(m, n).into_iter().filter(MonotoneMap::is_surjective).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(n: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(v.len() - 1, n, v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = MonotoneMap::identity(3);
        assert_eq!(compose(&id, &id).unwrap(), id);
        let g = mm(2, &[0, 2]);
        let f = mm(1, &[1, 1]);
        assert_eq!(compose(&g, &f).unwrap(), mm(2, &[2, 2]));
        let se = |a, b| standard_embedding(a, b).unwrap();
        assert_eq!(compose(&se(2, 3), &se(1, 2)).unwrap(), se(1, 3));
        assert!(matches!(compose(&f, &g), Err(Error::Composition(_))));
    }

    #[test]
    fn classify_examples() {
        for n in 0..5 {
            let c = classify(&MonotoneMap::identity(n));
            assert!(c.is_right_convex_injection && c.is_right_convex_surjection);
        }
        let c = classify(&standard_embedding(2, 3).unwrap());
        assert!(c.is_right_convex_injection);
        assert!(!c.is_right_convex_surjection);
        assert!(classify(&standard_embedding(1, 3).unwrap()).is_right_convex_injection);
        // (0,1,...,a) with a = m is the identity and so a right convex injection
        assert!(classify(&standard_embedding(4, 4).unwrap()).is_right_convex_injection);
        // anything into [0] is a right convex surjection
        assert!(classify(&mm(0, &[0, 0, 0])).is_right_convex_surjection);
        // image {2,3} misses 0 and 1 below it
        assert!(!classify(&mm(3, &[2, 3])).is_right_convex_injection);
        assert!(!classify(&mm(3, &[0, 2])).is_right_convex_injection);
    }

    #[test]
    fn factorize_example() {
        let f = mm(3, &[0, 0, 2]);
        let (p, i) = factorize(&f);
        assert_eq!(p, mm(2, &[0, 0, 2]));
        assert_eq!(i, standard_embedding(2, 3).unwrap());
        let id = MonotoneMap::identity(4);
        assert_eq!(factorize(&id), (id.clone(), id));
    }

    #[test]
    fn standard_embedding_examples() {
        assert_eq!(standard_embedding(3, 3).unwrap(), MonotoneMap::identity(3));
        assert_eq!(standard_embedding(0, 3).unwrap().values(), &[0]);
        assert!(standard_embedding(4, 3).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(MonotoneMap::face(2, 1).unwrap().values(), &[0, 2]);
        assert_eq!(MonotoneMap::degeneracy(1, 0).unwrap().values(), &[0, 0, 1]);
        assert!(MonotoneMap::face(0, 0).is_err());
        assert_eq!(all_maps(1, 2).len(), 6);
        assert_eq!(injections(1, 3).len(), 6);
        assert_eq!(surjections(3, 1).len(), 3);
        let (s, i) = mm(4, &[1, 1, 3]).image_factorization();
        assert_eq!(s.values(), &[0, 0, 1]);
        assert_eq!(i.values(), &[1, 3]);
    }

    #[test]
    fn rejects_invalid() {
        assert!(MonotoneMap::new(1, 2, vec![2, 1]).is_err());
        assert!(MonotoneMap::new(1, 2, vec![0, 3]).is_err());
        assert!(MonotoneMap::new(2, 2, vec![0, 1]).is_err());
        let parsed: std::result::Result<MonotoneMap, _> =
            serde_json::from_str(r#"{"m":1,"n":1,"values":[1,0]}"#);
        assert!(parsed.is_err());
    }
}
