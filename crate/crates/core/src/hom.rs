//! Backtracking enumeration of maps between presented objects.
//!
//! Source cells are visited by total degree, then id. Once the faces of a cell
//! are mapped, its image must be a target simplex with exactly those faces, so
//! candidates come straight out of a face-signature index of the target.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::ez::{Complex, Morphism, Simp};

type Index<const D: usize> = HashMap<Vec<Simp<D>>, Vec<Simp<D>>>;

pub struct HomSearch<'a, const D: usize> {
    source: &'a Complex<D>,
    target: &'a Complex<D>,
    fixed: Vec<Option<Simp<D>>>,
    over: Option<(&'a Morphism<D>, &'a Morphism<D>)>,
    injective: bool,
}

#[derive(Clone, Debug)]
pub struct HomResult<const D: usize> {
    pub maps: Vec<Vec<Simp<D>>>,
    /// False when the source reaches past what the target presentation knows.
    pub exact: bool,
}

#[derive(Clone)]
struct State<const D: usize> {
    assign: Vec<Simp<D>>,
    used: Vec<bool>,
    pos: usize,
}

impl<'a, const D: usize> HomSearch<'a, D> {
    pub fn new(source: &'a Complex<D>, target: &'a Complex<D>) -> Self {
        HomSearch { source, target, fixed: vec![None; source.len()], over: None, injective: false }
    }

    /// Pin the image of a source cell.
    pub fn fix(mut self, cell: u32, image: Simp<D>) -> Self {
        self.fixed[cell as usize] = Some(image);
        self
    }

    pub fn fix_all(mut self, pins: impl IntoIterator<Item = (u32, Simp<D>)>) -> Self {
        for (c, s) in pins {
            self.fixed[c as usize] = Some(s);
        }
        self
    }

    /// Only maps `f` with `q ∘ f = p` for `p: source → X`, `q: target → X`.
    pub fn over(mut self, p: &'a Morphism<D>, q: &'a Morphism<D>) -> Self {
        self.over = Some((p, q));
        self
    }

    /// Only maps sending distinct cells to distinct nondegenerate cells.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn is_exact(&self) -> bool {
        self.source.is_exact() && self.source.cells().iter().all(|c| self.target.knows(c.deg))
    }

    /// Cells by dimension, except that a cell is placed as soon as all its
    /// faces are, so higher cells prune the search early.
    fn order(&self) -> Vec<u32> {
        let n = self.source.len();
        let mut ids: Vec<u32> = (0..n as u32).collect();
        ids.sort_by_key(|&c| (self.source.cell(c).deg.iter().sum::<usize>(), c));
        let mut waiting = vec![0usize; n];
        let mut cofaces: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (id, c) in self.source.cells().iter().enumerate() {
            let mut fs: Vec<u32> = c.faces.iter().flatten().map(|f| f.cell).collect();
            fs.sort_unstable();
            fs.dedup();
            waiting[id] = fs.len();
            for f in fs {
                cofaces[f as usize].push(id as u32);
            }
        }
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &start in &ids {
            if placed[start as usize] {
                continue;
            }
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                placed[c as usize] = true;
                out.push(c);
                for &up in cofaces[c as usize].iter().rev() {
                    waiting[up as usize] -= 1;
                    if waiting[up as usize] == 0 {
                        stack.push(up);
                    }
                }
            }
        }
        out
    }

    fn index(&self) -> HashMap<[usize; D], Index<D>> {
        let mut degs: Vec<[usize; D]> = Vec::new();
        for (id, c) in self.source.cells().iter().enumerate() {
            if self.fixed[id].is_none() && !degs.contains(&c.deg) {
                degs.push(c.deg);
            }
        }
        let target = self.target;
        degs.into_par_iter()
            .map(|deg| {
                let mut idx: Index<D> = HashMap::new();
                for s in target.simplices(deg) {
                    if self.injective && !s.is_nondegenerate() {
                        continue;
                    }
                    idx.entry(target.all_faces(&s)).or_default().push(s);
                }
                (deg, idx)
            })
            .collect()
    }

    fn image(&self, assign: &[Simp<D>], x: &Simp<D>) -> Simp<D> {
        let mut y = assign[x.cell as usize];
        for d in 0..D {
            y = self.target.degenerate_by(&y, d, x.degen[d], x.deg[d] as usize);
        }
        y
    }

    fn candidates(&self, idx: &HashMap<[usize; D], Index<D>>, st: &State<D>, cell: u32) -> Vec<Simp<D>> {
        let c = self.source.cell(cell);
        let mut key = Vec::new();
        for d in 0..D {
            for f in &c.faces[d] {
                key.push(self.image(&st.assign, f));
            }
        }
        let base: Vec<Simp<D>> = match self.fixed[cell as usize] {
            Some(s) => {
                if s.degree() != c.deg || s.cell as usize >= self.target.len() || self.target.all_faces(&s) != key {
                    return Vec::new();
                }
                if self.injective && !s.is_nondegenerate() {
                    return Vec::new();
                }
                vec![s]
            }
            None => idx.get(&c.deg).and_then(|m| m.get(&key)).cloned().unwrap_or_default(),
        };
        base.into_iter()
            .filter(|s| !self.injective || !st.used[s.cell as usize])
            .filter(|s| match self.over {
                Some((p, q)) => q.apply(s) == p.assign[cell as usize],
                None => true,
            })
            .collect()
    }

    fn advance(&self, idx: &HashMap<[usize; D], Index<D>>, order: &[u32], st: &State<D>) -> Vec<State<D>> {
        let cell = order[st.pos];
        self.candidates(idx, st, cell)
            .into_iter()
            .map(|s| {
                let mut next = st.clone();
                next.assign[cell as usize] = s;
                if self.injective {
                    next.used[s.cell as usize] = true;
                }
                next.pos += 1;
                next
            })
            .collect()
    }

    fn dfs(
        &self,
        idx: &HashMap<[usize; D], Index<D>>,
        order: &[u32],
        st: &mut State<D>,
        visit: &mut dyn FnMut(&[Simp<D>]) -> bool,
    ) -> bool {
        if st.pos == order.len() {
            return visit(&st.assign);
        }
        let cell = order[st.pos];
        for s in self.candidates(idx, st, cell) {
            let prev = st.assign[cell as usize];
            st.assign[cell as usize] = s;
            if self.injective {
                st.used[s.cell as usize] = true;
            }
            st.pos += 1;
            let go_on = self.dfs(idx, order, st, visit);
            st.pos -= 1;
            if self.injective {
                st.used[s.cell as usize] = false;
            }
            st.assign[cell as usize] = prev;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn start(&self) -> State<D> {
        let filler = Simp { cell: u32::MAX, deg: [0; D], degen: [0; D] };
        State { assign: vec![filler; self.source.len()], used: vec![false; self.target.len()], pos: 0 }
    }

    /// Splits the search into independent subtrees, in search order.
    fn frontier(&self, idx: &HashMap<[usize; D], Index<D>>, order: &[u32]) -> Vec<State<D>> {
        let want = 4 * rayon::current_num_threads().max(1);
        let mut layer = vec![self.start()];
        while layer.len() < want && layer.iter().all(|s| s.pos < order.len()) && !layer.is_empty() {
            layer = layer.iter().flat_map(|s| self.advance(idx, order, s)).collect();
        }
        layer
    }

    pub fn all(&self) -> HomResult<D> {
        let order = self.order();
        let idx = self.index();
        let maps = self
            .frontier(&idx, &order)
            .into_par_iter()
            .map(|mut st| {
                let mut out = Vec::new();
                self.dfs(&idx, &order, &mut st, &mut |a| {
                    out.push(a.to_vec());
                    true
                });
                out
            })
            .collect::<Vec<_>>()
            .concat();
        HomResult { maps, exact: self.is_exact() }
    }

    pub fn count(&self) -> usize {
        let order = self.order();
        let idx = self.index();
        self.frontier(&idx, &order)
            .into_par_iter()
            .map(|mut st| {
                let mut n = 0usize;
                self.dfs(&idx, &order, &mut st, &mut |_| {
                    n += 1;
                    true
                });
                n
            })
            .sum()
    }

    pub fn first(&self) -> Option<Vec<Simp<D>>> {
        let order = self.order();
        let idx = self.index();
        let mut st = self.start();
        let mut found = None;
        self.dfs(&idx, &order, &mut st, &mut |a| {
            found = Some(a.to_vec());
            false
        });
        found
    }
}

/// Every map `source → target`, wrapped as morphisms.
pub fn hom_maps<const D: usize>(source: &Arc<Complex<D>>, target: &Arc<Complex<D>>) -> (Vec<Morphism<D>>, bool) {
    let res = HomSearch::new(source, target).all();
    let maps = res
        .maps
        .into_iter()
        .map(|a| Morphism::new_unchecked(source.clone(), target.clone(), a))
        .collect();
    (maps, res.exact)
}

/// An isomorphism `a → b`, if one exists.
pub fn find_isomorphism<const D: usize>(a: &Arc<Complex<D>>, b: &Arc<Complex<D>>) -> Option<Morphism<D>> {
    if a.count_by_degree() != b.count_by_degree() {
        return None;
    }
    HomSearch::new(a, b)
        .injective()
        .first()
        .map(|assign| Morphism::new_unchecked(a.clone(), b.clone(), assign))
}

pub fn isomorphic<const D: usize>(a: &Arc<Complex<D>>, b: &Arc<Complex<D>>) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ez::Complex;

    fn interval() -> Complex<1> {
        let mut x = Complex::<1>::empty();
        let a = x.add_cell("0", [0], [vec![]]).unwrap();
        let b = x.add_cell("1", [0], [vec![]]).unwrap();
        let (sa, sb) = (x.simp(a), x.simp(b));
        x.add_cell("01", [1], [vec![sb, sa]]).unwrap();
        x
    }

    #[test]
    fn interval_self_maps() {
        let i = interval();
        assert_eq!(HomSearch::new(&i, &i).count(), 3);
        let res = HomSearch::new(&i, &i).all();
        assert_eq!(res.maps.len(), 3);
        assert!(res.exact);
        assert_eq!(HomSearch::new(&i, &i).injective().count(), 1);
        let pinned = HomSearch::new(&i, &i).fix(0, i.simp(1)).count();
        assert_eq!(pinned, 1);
    }

    #[test]
    fn isomorphism_search() {
        let a = Arc::new(interval());
        let b = Arc::new(interval().renamed(|id, _| format!("v{id}")));
        assert!(isomorphic(&a, &b));
        let mut pts = Complex::<1>::empty();
        pts.add_cell("p", [0], [vec![]]).unwrap();
        assert!(!isomorphic(&a, &Arc::new(pts)));
    }
}
