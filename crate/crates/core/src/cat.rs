//! Finite categories, set-valued functors and categories fibered in sets,
//! with the classical Yoneda statements as exhaustive checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::classes;
use crate::realize::{realize, Presheaf};
use crate::sset::FinSimplicialSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Wire form; `compose` lists `[f, g, h]` with `h = g ∘ f`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<Arrow>,
    pub compose: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
    hom: Vec<Vec<Vec<usize>>>,
}

impl FinCategory {
    /// `arrows` are `(name, src, tgt)`; `then(f, g)` must give `g ∘ f` for
    /// every composable pair, and is checked for unit laws and associativity.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        then: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let n = objects.len();
        if identity.len() != n {
            return Err(Error::Shape(format!("{} identities for {n} objects", identity.len())));
        }
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut names = Vec::new();
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, (name, s, t)) in arrows.into_iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::Shape(format!("arrow {name} has an unknown end")));
            }
            hom[s][t].push(i);
            names.push(name);
            src.push(s);
            tgt.push(t);
        }
        let mut table = HashMap::new();
        for f in 0..names.len() {
            for g in 0..names.len() {
                if tgt[f] != src[g] {
                    continue;
                }
                let h = then(f, g).ok_or_else(|| {
                    Error::Composition(format!("missing composite of {} then {}", names[f], names[g]))
                })?;
                if h >= names.len() || src[h] != src[f] || tgt[h] != tgt[g] {
                    return Err(Error::Composition(format!("composite of {} then {} has wrong ends", names[f], names[g])));
                }
                table.insert((f, g), h);
            }
        }
        let c = FinCategory { objects, names, src, tgt, identity, table, hom };
        c.check_laws()?;
        Ok(c)
    }

    fn check_laws(&self) -> Result<()> {
        for (o, &i) in self.identity.iter().enumerate() {
            if self.src[i] != o || self.tgt[i] != o {
                return Err(Error::Composition(format!("identity of {} is not an endomorphism", self.objects[o])));
            }
        }
        for f in 0..self.names.len() {
            if self.then(self.identity[self.src[f]], f) != f || self.then(f, self.identity[self.tgt[f]]) != f {
                return Err(Error::Composition(format!("unit law fails at {}", self.names[f])));
            }
        }
        for f in 0..self.names.len() {
            for &g in self.out_of(self.tgt[f]).iter() {
                let fg = self.then(f, g);
                for &h in self.out_of(self.tgt[g]).iter() {
                    if self.then(fg, h) != self.then(f, self.then(g, h)) {
                        return Err(Error::Composition(format!(
                            "associativity fails at {}, {}, {}",
                            self.names[f], self.names[g], self.names[h]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn out_of(&self, o: usize) -> Vec<usize> {
        (0..self.objects.len()).flat_map(|t| self.hom[o][t].iter().copied()).collect()
    }

    /// The poset on `0..n` with `i ≤ j` iff `leq(i, j)`; arrows are named by their ends.
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let name = |i: usize, j: usize| if n <= 10 { format!("{i}{j}") } else { format!("{i},{j}") };
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || leq(i, j) {
                    index.insert((i, j), arrows.len());
                    arrows.push((name(i, j), i, j));
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.1, a.2)).collect();
        let identity = (0..n).map(|i| index[&(i, i)]).collect();
        FinCategory::new(
            (0..n).map(|i| i.to_string()).collect(),
            arrows,
            identity,
            |f, g| index.get(&(ends[f].0, ends[g].1)).copied(),
        )
    }

    /// `[n]` as a category.
    pub fn chain(n: usize) -> Self {
        FinCategory::poset(n + 1, |i, j| i <= j).expect("a total order is a poset")
    }

    /// Two objects and an isomorphism between them.
    pub fn iso_pair() -> Self {
        let arrows = vec![("00".into(), 0, 0), ("01".into(), 0, 1), ("10".into(), 1, 0), ("11".into(), 1, 1)];
        let ends = [(0, 0), (0, 1), (1, 0), (1, 1)];
        FinCategory::new(vec!["0".into(), "1".into()], arrows, vec![0, 3], |f, g| {
            ends.iter().position(|&e| e == (ends[f].0, ends[g].1))
        })
        .expect("the free isomorphism is a category")
    }

    pub fn terminal() -> Self {
        FinCategory::chain(0)
    }

    pub fn from_json(j: &CategoryJson) -> Result<Self> {
        let obj: HashMap<&str, usize> = j.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let find_obj = |o: &str| obj.get(o).copied().ok_or_else(|| Error::Parse(format!("unknown object {o}")));
        let mut arrows = Vec::new();
        let mut arr = HashMap::new();
        for (i, m) in j.morphisms.iter().enumerate() {
            if arr.insert(m.id.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate morphism {}", m.id)));
            }
            arrows.push((m.id.clone(), find_obj(&m.src)?, find_obj(&m.tgt)?));
        }
        let find_arr = |a: &str| arr.get(a).copied().ok_or_else(|| Error::Parse(format!("unknown morphism {a}")));
        let mut identity = Vec::new();
        for o in &j.objects {
            let id = j.identities.get(o).ok_or_else(|| Error::Parse(format!("no identity for {o}")))?;
            identity.push(find_arr(id)?);
        }
        let mut table = HashMap::new();
        for [f, g, h] in &j.compose {
            table.insert((find_arr(f)?, find_arr(g)?), find_arr(h)?);
        }
        let is_id: Vec<bool> = (0..arrows.len()).map(|a| identity.contains(&a)).collect();
        FinCategory::new(j.objects.clone(), arrows, identity, |f, g| {
            table.get(&(f, g)).copied().or(if is_id[f] {
                Some(g)
            } else if is_id[g] {
                Some(f)
            } else {
                None
            })
        })
    }

    pub fn to_json(&self) -> CategoryJson {
        let mut compose = Vec::new();
        for f in 0..self.names.len() {
            for g in self.out_of(self.tgt[f]) {
                compose.push([self.names[f].clone(), self.names[g].clone(), self.names[self.then(f, g)].clone()]);
            }
        }
        CategoryJson {
            objects: self.objects.clone(),
            morphisms: (0..self.names.len())
                .map(|a| Arrow {
                    id: self.names[a].clone(),
                    src: self.objects[self.src[a]].clone(),
                    tgt: self.objects[self.tgt[a]].clone(),
                })
                .collect(),
            compose,
            identities: (0..self.objects.len())
                .map(|o| (self.objects[o].clone(), self.names[self.identity[o]].clone()))
                .collect(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.names.len()
    }

    pub fn nonidentity_count(&self) -> usize {
        self.names.len() - self.objects.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|o| o == name)
    }

    pub fn src(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.tgt[a]
    }

    pub fn id(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.src[a]] == a
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// `g ∘ f`.
    pub fn then(&self, f: usize, g: usize) -> usize {
        self.table[&(f, g)]
    }

    /// Nonidentity arrows whose composites give every nonidentity arrow.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut reach = vec![false; self.names.len()];
        for o in 0..self.objects.len() {
            reach[self.identity[o]] = true;
        }
        let composite: Vec<bool> = (0..self.names.len())
            .map(|h| {
                self.table.iter().any(|(&(f, g), &k)| k == h && !self.is_identity(f) && !self.is_identity(g))
            })
            .collect();
        let order = (0..self.names.len()).filter(|&a| !composite[a]).chain((0..self.names.len()).filter(|&a| composite[a]));
        for a in order.collect::<Vec<_>>() {
            if reach[a] {
                continue;
            }
            gens.push(a);
            loop {
                let mut grew = false;
                for f in 0..self.names.len() {
                    if !reach[f] {
                        continue;
                    }
                    for &g in &gens {
                        if self.tgt[f] == self.src[g] {
                            let h = self.then(f, g);
                            if !reach[h] {
                                reach[h] = true;
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        gens
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct CatFunctor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

impl CatFunctor {
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for a in 0..s.arrow_count() {
            let b = self.on_arrows[a];
            if t.src(b) != self.on_objects[s.src(a)] || t.tgt(b) != self.on_objects[s.tgt(a)] {
                return Err(Error::Composition(format!("{} lands on an arrow with wrong ends", s.arrow_name(a))));
            }
        }
        for o in 0..s.object_count() {
            if self.on_arrows[s.id(o)] != t.id(self.on_objects[o]) {
                return Err(Error::Composition(format!("identity of {} is not preserved", s.object_name(o))));
            }
        }
        for f in 0..s.arrow_count() {
            for g in s.out_of(s.tgt(f)) {
                if self.on_arrows[s.then(f, g)] != t.then(self.on_arrows[f], self.on_arrows[g]) {
                    return Err(Error::Composition(format!(
                        "composite of {} then {} is not preserved",
                        s.arrow_name(f),
                        s.arrow_name(g)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        CatFunctor {
            on_objects: (0..c.object_count()).collect(),
            on_arrows: (0..c.arrow_count()).collect(),
            source: c.clone(),
            target: c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// `F: C → Set` or `P: Cᵒᵖ → Set`. `maps[f]` is the function along `f`:
/// `F(src f) → F(tgt f)`, respectively `P(tgt f) → P(src f)`.
#[derive(Clone, Debug)]
pub struct SetFunctor {
    pub base: Arc<FinCategory>,
    pub variance: Variance,
    pub sets: Vec<Vec<String>>,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorJson {
    pub variance: Variance,
    pub sets: BTreeMap<String, Vec<String>>,
    pub maps: BTreeMap<String, Vec<String>>,
}

impl SetFunctor {
    pub fn new(base: Arc<FinCategory>, variance: Variance, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let f = SetFunctor { base, variance, sets, maps };
        f.validate()?;
        Ok(f)
    }

    /// Object the arrow's function starts from, and where it lands.
    pub fn ends(&self, a: usize) -> (usize, usize) {
        match self.variance {
            Variance::Covariant => (self.base.src(a), self.base.tgt(a)),
            Variance::Contravariant => (self.base.tgt(a), self.base.src(a)),
        }
    }

    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.maps[a][x]
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.base;
        if self.sets.len() != c.object_count() || self.maps.len() != c.arrow_count() {
            return Err(Error::Shape("functor tables do not match the category".into()));
        }
        for a in 0..c.arrow_count() {
            let (s, t) = self.ends(a);
            if self.maps[a].len() != self.sets[s].len() || self.maps[a].iter().any(|&y| y >= self.sets[t].len()) {
                return Err(Error::Shape(format!("function along {} has the wrong shape", c.arrow_name(a))));
            }
        }
        for o in 0..c.object_count() {
            if self.maps[c.id(o)].iter().enumerate().any(|(i, &y)| i != y) {
                return Err(Error::Composition(format!("identity of {} acts nontrivially", c.object_name(o))));
            }
        }
        for f in 0..c.arrow_count() {
            for g in c.out_of(c.tgt(f)) {
                let h = c.then(f, g);
                let (first, second) = match self.variance {
                    Variance::Covariant => (f, g),
                    Variance::Contravariant => (g, f),
                };
                let (s, _) = self.ends(first);
                for x in 0..self.sets[s].len() {
                    if self.apply(second, self.apply(first, x)) != self.apply(h, x) {
                        return Err(Error::Composition(format!(
                            "composite {} is not preserved",
                            c.arrow_name(h)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(base: Arc<FinCategory>, j: &FunctorJson) -> Result<Self> {
        let mut sets = Vec::new();
        for o in 0..base.object_count() {
            let s = j.sets.get(base.object_name(o)).cloned().unwrap_or_default();
            sets.push(s);
        }
        let variance = j.variance;
        let mut maps = Vec::new();
        for a in 0..base.arrow_count() {
            let (s, t) = match variance {
                Variance::Covariant => (base.src(a), base.tgt(a)),
                Variance::Contravariant => (base.tgt(a), base.src(a)),
            };
            let m = match j.maps.get(base.arrow_name(a)) {
                Some(vals) => vals
                    .iter()
                    .map(|v| {
                        sets[t].iter().position(|x| x == v).ok_or_else(|| {
                            Error::Parse(format!("{v} is not in the set at {}", base.object_name(t)))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()?,
                None if base.is_identity(a) => (0..sets[s].len()).collect(),
                None => return Err(Error::Parse(format!("no function for {}", base.arrow_name(a)))),
            };
            maps.push(m);
        }
        SetFunctor::new(base, variance, sets, maps)
    }

    pub fn to_json(&self) -> FunctorJson {
        let c = &self.base;
        FunctorJson {
            variance: self.variance,
            sets: (0..c.object_count()).map(|o| (c.object_name(o).to_string(), self.sets[o].clone())).collect(),
            maps: (0..c.arrow_count())
                .map(|a| {
                    let (_, t) = self.ends(a);
                    (c.arrow_name(a).to_string(), self.maps[a].iter().map(|&y| self.sets[t][y].clone()).collect())
                })
                .collect(),
        }
    }

    pub fn size(&self, o: usize) -> usize {
        self.sets[o].len()
    }

    /// `Hom(c, −)`.
    pub fn hom_from(base: Arc<FinCategory>, c: usize) -> Self {
        let sets = (0..base.object_count())
            .map(|x| base.hom(c, x).iter().map(|&a| base.arrow_name(a).to_string()).collect())
            .collect();
        let maps = (0..base.arrow_count())
            .map(|f| {
                let h = base.hom(c, base.tgt(f));
                base.hom(c, base.src(f)).iter().map(|&g| pos(h, base.then(g, f))).collect()
            })
            .collect();
        SetFunctor { base, variance: Variance::Covariant, sets, maps }
    }

    /// `Hom(−, c)`.
    pub fn hom_to(base: Arc<FinCategory>, c: usize) -> Self {
        let sets = (0..base.object_count())
            .map(|x| base.hom(x, c).iter().map(|&a| base.arrow_name(a).to_string()).collect())
            .collect();
        let maps = (0..base.arrow_count())
            .map(|f| {
                let h = base.hom(base.src(f), c);
                base.hom(base.tgt(f), c).iter().map(|&g| pos(h, base.then(f, g))).collect()
            })
            .collect();
        SetFunctor { base, variance: Variance::Contravariant, sets, maps }
    }

    pub fn constant(base: Arc<FinCategory>, variance: Variance, elems: &[&str]) -> Self {
        let set: Vec<String> = elems.iter().map(|s| s.to_string()).collect();
        let sets = vec![set.clone(); base.object_count()];
        let maps = vec![(0..set.len()).collect(); base.arrow_count()];
        SetFunctor { base, variance, sets, maps }
    }

    pub fn coproduct(&self, other: &SetFunctor) -> Result<Self> {
        if self.variance != other.variance {
            return Err(Error::Precondition("coproduct of functors of different variance".into()));
        }
        let sets = (0..self.base.object_count())
            .map(|o| {
                let a = self.sets[o].iter().map(|x| format!("{x}.0"));
                a.chain(other.sets[o].iter().map(|x| format!("{x}.1"))).collect()
            })
            .collect();
        let maps = (0..self.base.arrow_count())
            .map(|f| {
                let (_, t) = self.ends(f);
                let shift = self.sets[t].len();
                let mut m = self.maps[f].clone();
                m.extend(other.maps[f].iter().map(|&y| y + shift));
                m
            })
            .collect();
        Ok(SetFunctor { base: self.base.clone(), variance: self.variance, sets, maps })
    }

    /// `Hom(F(−), S)` for a covariant `F` and `S = {0, …, s-1}`.
    pub fn hom_into(f: &SetFunctor, s: usize) -> Result<Self> {
        if f.variance != Variance::Covariant {
            return Err(Error::Precondition("Hom(F(−), S) needs a covariant F".into()));
        }
        let c = &f.base;
        let funcs: Vec<Vec<Vec<usize>>> = (0..c.object_count()).map(|o| all_functions(f.size(o), s)).collect();
        let sets = funcs
            .iter()
            .map(|fs| fs.iter().map(|v| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")).collect())
            .collect();
        let maps = (0..c.arrow_count())
            .map(|a| {
                let (x, y) = (c.src(a), c.tgt(a));
                funcs[y]
                    .iter()
                    .map(|phi| {
                        let pulled: Vec<usize> = (0..f.size(x)).map(|e| phi[f.apply(a, e)]).collect();
                        // all_functions lists tables in base-s order, first entry most significant
                        pulled.iter().fold(0, |acc, &d| acc * s + d)
                    })
                    .collect()
            })
            .collect();
        Ok(SetFunctor { base: c.clone(), variance: Variance::Contravariant, sets, maps })
    }
}

fn pos(list: &[usize], x: usize) -> usize {
    list.iter().position(|&y| y == x).expect("element present")
}

/// All functions `{0..n} → {0..s}` as value lists, lexicographically.
pub fn all_functions(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..s).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

struct NatSearch<'a> {
    rules: &'a [Vec<(usize, usize, bool)>],
    g: &'a SetFunctor,
    vars: &'a [(usize, usize)],
    value: Vec<usize>,
    trail: Vec<usize>,
}

impl NatSearch<'_> {
    /// Sets `value[i] = v` and everything it forces along generators.
    fn assign(&mut self, i: usize, v: usize) -> bool {
        let mut stack = vec![(i, v)];
        while let Some((j, w)) = stack.pop() {
            if self.value[j] != usize::MAX {
                if self.value[j] != w {
                    return false;
                }
                continue;
            }
            let consistent = self.rules[j].iter().all(|&(other, a, forward)| {
                let u = if other == j { w } else { self.value[other] };
                u == usize::MAX || if forward { u == self.g.apply(a, w) } else { w == self.g.apply(a, u) }
            });
            if !consistent {
                return false;
            }
            self.value[j] = w;
            self.trail.push(j);
            for &(other, a, forward) in &self.rules[j] {
                if forward {
                    stack.push((other, self.g.apply(a, w)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let j = self.trail.pop().expect("above mark");
            self.value[j] = usize::MAX;
        }
    }

    fn go(&mut self, order: &[usize], pos: usize, out: &mut Vec<Vec<usize>>) {
        let Some(k) = (pos..order.len()).find(|&k| self.value[order[k]] == usize::MAX) else {
            out.push(self.value.clone());
            return;
        };
        let i = order[k];
        for v in 0..self.g.size(self.vars[i].0) {
            let mark = self.trail.len();
            if self.assign(i, v) {
                self.go(order, k + 1, out);
            }
            self.undo(mark);
        }
    }
}

/// Natural transformations `F ⇒ G` of functors with the same variance, as
/// component tables `η[object][element]`.
pub fn natural_transformations(f: &SetFunctor, g: &SetFunctor) -> Result<Vec<Vec<Vec<usize>>>> {
    if f.variance != g.variance || !Arc::ptr_eq(&f.base, &g.base) && *f.base != *g.base {
        return Err(Error::Precondition("functors must share base and variance".into()));
    }
    let c = &f.base;
    let vars: Vec<(usize, usize)> = (0..c.object_count()).flat_map(|o| (0..f.size(o)).map(move |x| (o, x))).collect();
    let index: HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // constraints: value[b] = G(arrow)(value[a])
    let mut rules: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); vars.len()];
    for a in c.generators() {
        let (s, t) = f.ends(a);
        for x in 0..f.size(s) {
            let va = index[&(s, x)];
            let vb = index[&(t, f.apply(a, x))];
            rules[va].push((vb, a, true));
            rules[vb].push((va, a, false));
        }
    }
    // roots first: elements that no generator sends anything to
    let mut order: Vec<usize> = (0..vars.len()).collect();
    order.sort_by_key(|&i| rules[i].iter().filter(|r| !r.2).count());
    let mut out = Vec::new();
    let mut search = NatSearch { rules: &rules, g, vars: &vars, value: vec![usize::MAX; vars.len()], trail: Vec::new() };
    let mut flat = Vec::new();
    search.go(&order, 0, &mut flat);
    for v in flat {
        let mut comp = vec![Vec::new(); c.object_count()];
        for (i, &(o, _)) in vars.iter().enumerate() {
            comp[o].push(v[i]);
        }
        out.push(comp);
    }
    Ok(out)
}

/// `P ⊗ F` as classes of triples `(object, a ∈ P(object), b ∈ F(object))`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub classes: Vec<Vec<(usize, usize, usize)>>,
    class: HashMap<(usize, usize, usize), usize>,
}

impl Tensor {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, o: usize, a: usize, b: usize) -> usize {
        self.class[&(o, a, b)]
    }
}

pub fn tensor_functors(p: &SetFunctor, f: &SetFunctor) -> Result<Tensor> {
    if p.variance != Variance::Contravariant || f.variance != Variance::Covariant {
        return Err(Error::Precondition("tensor needs a contravariant and a covariant functor".into()));
    }
    let c = &p.base;
    let mut triples = Vec::new();
    let mut index = HashMap::new();
    for o in 0..c.object_count() {
        for a in 0..p.size(o) {
            for b in 0..f.size(o) {
                index.insert((o, a, b), triples.len());
                triples.push((o, a, b));
            }
        }
    }
    let mut pairs = Vec::new();
    for arrow in 0..c.arrow_count() {
        let (x, y) = (c.src(arrow), c.tgt(arrow));
        for a in 0..p.size(y) {
            for b in 0..f.size(x) {
                pairs.push((index[&(x, p.apply(arrow, a), b)], index[&(y, a, f.apply(arrow, b))]));
            }
        }
    }
    let cls: Vec<Vec<(usize, usize, usize)>> =
        classes(triples.len(), pairs).into_iter().map(|c| c.into_iter().map(|i| triples[i]).collect()).collect();
    let class = cls.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&t| (t, i))).collect();
    Ok(Tensor { classes: cls, class })
}

/// A functor `total → base`.
#[derive(Clone, Debug)]
pub struct FiberedCategory {
    pub total: Arc<FinCategory>,
    pub base: Arc<FinCategory>,
    pub projection: CatFunctor,
}

impl FiberedCategory {
    pub fn new(projection: CatFunctor) -> Result<Self> {
        projection.validate()?;
        Ok(FiberedCategory { total: projection.source.clone(), base: projection.target.clone(), projection })
    }

    pub fn over(&self, d: usize) -> usize {
        self.projection.on_objects[d]
    }

    pub fn fiber(&self, c: usize) -> Vec<usize> {
        (0..self.total.object_count()).filter(|&d| self.over(d) == c).collect()
    }

    /// Total arrows over `f` ending at `d`.
    pub fn lifts_into(&self, f: usize, d: usize) -> Vec<usize> {
        (0..self.total.arrow_count())
            .filter(|&t| self.projection.on_arrows[t] == f && self.total.tgt(t) == d)
            .collect()
    }

    pub fn lifts_from(&self, f: usize, d: usize) -> Vec<usize> {
        (0..self.total.arrow_count())
            .filter(|&t| self.projection.on_arrows[t] == f && self.total.src(t) == d)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberedReport {
    pub fibered_in_sets: bool,
    pub cofibered_in_sets: bool,
    pub witness: Option<String>,
}

pub fn fibered_check(p: &FiberedCategory) -> FiberedReport {
    let (base, total) = (&p.base, &p.total);
    let mut into: HashMap<(usize, usize), usize> = HashMap::new();
    let mut from: HashMap<(usize, usize), usize> = HashMap::new();
    for t in 0..total.arrow_count() {
        let f = p.projection.on_arrows[t];
        *into.entry((f, total.tgt(t))).or_default() += 1;
        *from.entry((f, total.src(t))).or_default() += 1;
    }
    let mut fib_witness = None;
    let mut cofib_witness = None;
    for f in 0..base.arrow_count() {
        for d in 0..total.object_count() {
            if fib_witness.is_none() && p.over(d) == base.tgt(f) {
                let k = into.get(&(f, d)).copied().unwrap_or(0);
                if k != 1 {
                    fib_witness = Some(format!(
                        "{} lifts of {} ending at {}",
                        k,
                        base.arrow_name(f),
                        total.object_name(d)
                    ));
                }
            }
            if cofib_witness.is_none() && p.over(d) == base.src(f) {
                let k = from.get(&(f, d)).copied().unwrap_or(0);
                if k != 1 {
                    cofib_witness = Some(format!(
                        "{} lifts of {} starting at {}",
                        k,
                        base.arrow_name(f),
                        total.object_name(d)
                    ));
                }
            }
        }
    }
    FiberedReport {
        fibered_in_sets: fib_witness.is_none(),
        cofibered_in_sets: cofib_witness.is_none(),
        witness: fib_witness.or(cofib_witness),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceSide {
    Under,
    Over,
}

/// `C_{c/}` projecting to targets, or `C_{/c}` projecting to sources.
pub fn slice_category(c: &Arc<FinCategory>, x: usize, side: SliceSide) -> FiberedCategory {
    let objs: Vec<usize> = match side {
        SliceSide::Under => (0..c.object_count()).flat_map(|y| c.hom(x, y).to_vec()).collect(),
        SliceSide::Over => (0..c.object_count()).flat_map(|y| c.hom(y, x).to_vec()).collect(),
    };
    let free_end = |a: usize| match side {
        SliceSide::Under => c.tgt(a),
        SliceSide::Over => c.src(a),
    };
    let mut arrows = Vec::new();
    let mut data = Vec::new();
    for (i, &u) in objs.iter().enumerate() {
        for (j, &v) in objs.iter().enumerate() {
            for &h in c.hom(free_end(u), free_end(v)) {
                let commutes = match side {
                    SliceSide::Under => c.then(u, h) == v,
                    SliceSide::Over => c.then(h, v) == u,
                };
                if commutes {
                    // the named end together with h determines the other one
                    let named = if side == SliceSide::Under { u } else { v };
                    arrows.push((format!("{}@{}", c.arrow_name(h), c.arrow_name(named)), i, j));
                    data.push((h, i, j));
                }
            }
        }
    }
    let lookup: HashMap<(usize, usize, usize), usize> = data.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let identity = objs.iter().enumerate().map(|(i, &u)| lookup[&(c.id(free_end(u)), i, i)]).collect();
    let total = FinCategory::new(
        objs.iter().map(|&a| c.arrow_name(a).to_string()).collect(),
        arrows,
        identity,
        |f, g| lookup.get(&(c.then(data[f].0, data[g].0), data[f].1, data[g].2)).copied(),
    )
    .expect("slices of a category are categories");
    let projection = CatFunctor {
        on_objects: objs.iter().map(|&a| free_end(a)).collect(),
        on_arrows: data.iter().map(|&(h, _, _)| h).collect(),
        source: Arc::new(total),
        target: c.clone(),
    };
    FiberedCategory::new(projection).expect("projection is a functor")
}

/// The category of elements with its projection.
pub fn grothendieck_cat(f: &SetFunctor) -> FiberedCategory {
    let c = &f.base;
    let mut objs = Vec::new();
    let mut oi = HashMap::new();
    for o in 0..c.object_count() {
        for a in 0..f.size(o) {
            oi.insert((o, a), objs.len());
            objs.push(format!("{}:{}", c.object_name(o), f.sets[o][a]));
        }
    }
    // an arrow is (base arrow, element at the end the functor acts from)
    let mut arrows = Vec::new();
    let mut data = Vec::new();
    for a in 0..c.arrow_count() {
        let (s, _) = f.ends(a);
        for x in 0..f.size(s) {
            let y = f.apply(a, x);
            let (from, to) = match f.variance {
                Variance::Covariant => (oi[&(c.src(a), x)], oi[&(c.tgt(a), y)]),
                Variance::Contravariant => (oi[&(c.src(a), y)], oi[&(c.tgt(a), x)]),
            };
            arrows.push((format!("{}:{}", c.arrow_name(a), f.sets[s][x]), from, to));
            data.push((a, x));
        }
    }
    let lookup: HashMap<(usize, usize), usize> = data.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let identity = (0..c.object_count())
        .flat_map(|o| (0..f.size(o)).map(move |a| (o, a)))
        .map(|(o, a)| lookup[&(c.id(o), a)])
        .collect();
    let total = FinCategory::new(objs, arrows, identity, |p, q| {
        let h = c.then(data[p].0, data[q].0);
        let x = match f.variance {
            Variance::Covariant => data[p].1,
            Variance::Contravariant => data[q].1,
        };
        lookup.get(&(h, x)).copied()
    })
    .expect("categories of elements are categories");
    let mut on_objects = Vec::new();
    for o in 0..c.object_count() {
        on_objects.extend(std::iter::repeat_n(o, f.size(o)));
    }
    let projection = CatFunctor {
        on_objects,
        on_arrows: data.iter().map(|&(a, _)| a).collect(),
        source: Arc::new(total),
        target: c.clone(),
    };
    FiberedCategory::new(projection).expect("projection is a functor")
}

/// `π₀ N(D ×_C E)` as classes of object pairs.
pub fn tensor_fibered(d: &FiberedCategory, e: &FiberedCategory) -> Result<Vec<Vec<(usize, usize)>>> {
    if *d.base != *e.base {
        return Err(Error::Precondition("fibered categories over different bases".into()));
    }
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for x in 0..d.total.object_count() {
        for y in 0..e.total.object_count() {
            if d.over(x) == e.over(y) {
                index.insert((x, y), pairs.len());
                pairs.push((x, y));
            }
        }
    }
    let mut links = Vec::new();
    for s in 0..d.total.arrow_count() {
        for t in 0..e.total.arrow_count() {
            if d.projection.on_arrows[s] == e.projection.on_arrows[t] {
                links.push((index[&(d.total.src(s), e.total.src(t))], index[&(d.total.tgt(s), e.total.tgt(t))]));
            }
        }
    }
    Ok(classes(pairs.len(), links).into_iter().map(|c| c.into_iter().map(|i| pairs[i]).collect()).collect())
}

/// Functors `a → b` commuting with the projections, as `(objects, arrows)` tables.
pub fn functors_over(a: &FiberedCategory, b: &FiberedCategory) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (sa, sb) = (&a.total, &b.total);
    let n = sa.object_count();
    let mut out = Vec::new();
    let mut objs = vec![usize::MAX; n];
    let candidates: Vec<Vec<usize>> = (0..n).map(|o| b.fiber(a.over(o))).collect();
    fn arrow_options(a: &FiberedCategory, b: &FiberedCategory, objs: &[usize], t: usize) -> Vec<usize> {
        let f = a.projection.on_arrows[t];
        b.lifts_into(f, objs[a.total.tgt(t)]).into_iter().filter(|&u| b.total.src(u) == objs[a.total.src(t)]).collect()
    }
    #[allow(clippy::too_many_arguments)]
    fn place(
        i: usize,
        a: &FiberedCategory,
        b: &FiberedCategory,
        candidates: &[Vec<usize>],
        objs: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let n = objs.len();
        if i == n {
            let options: Vec<Vec<usize>> = (0..a.total.arrow_count()).map(|t| arrow_options(a, b, objs, t)).collect();
            let mut arrows = vec![0; options.len()];
            choose(0, a, b, &options, &mut arrows, objs, out);
            return;
        }
        for &c in &candidates[i] {
            objs[i] = c;
            let ok = (0..a.total.arrow_count()).all(|t| {
                let (s, u) = (a.total.src(t), a.total.tgt(t));
                s.max(u) != i || objs[s] == usize::MAX || objs[u] == usize::MAX || !arrow_options(a, b, objs, t).is_empty()
            });
            if ok {
                place(i + 1, a, b, candidates, objs, out);
            }
            objs[i] = usize::MAX;
        }
    }
    fn choose(
        t: usize,
        a: &FiberedCategory,
        b: &FiberedCategory,
        options: &[Vec<usize>],
        arrows: &mut Vec<usize>,
        objs: &[usize],
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if t == options.len() {
            let sa = &a.total;
            let functorial = (0..sa.arrow_count()).all(|f| {
                sa.out_of(sa.tgt(f)).into_iter().all(|g| arrows[sa.then(f, g)] == b.total.then(arrows[f], arrows[g]))
            }) && (0..sa.object_count()).all(|o| arrows[sa.id(o)] == b.total.id(objs[o]));
            if functorial {
                out.push((objs.to_vec(), arrows.clone()));
            }
            return;
        }
        for &u in &options[t] {
            arrows[t] = u;
            choose(t + 1, a, b, options, arrows, objs, out);
        }
    }
    let _ = sb;
    place(0, a, b, &candidates, &mut objs, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YonedaMode {
    HomFunctor,
    TensorFunctor,
    HomFibered,
    TensorFibered,
}

pub enum YonedaInput<'a> {
    /// A covariant functor.
    Functor(&'a SetFunctor),
    Fibered(&'a FiberedCategory),
}

#[derive(Clone, Debug, Serialize)]
pub struct YonedaReport {
    pub mode: YonedaMode,
    pub object: String,
    pub lhs: usize,
    pub rhs: usize,
    pub bijection: bool,
    pub map_table: Vec<(String, String)>,
}

fn bijective(images: &[usize], rhs: usize) -> bool {
    let mut seen = vec![false; rhs];
    for &y in images {
        if y >= rhs || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    images.len() == rhs
}

/// The four Yoneda bijections at object `c`. `HomFunctor` takes a covariant
/// functor, `TensorFunctor` a contravariant one, the fibered modes a
/// category fibered in sets.
pub fn yoneda_check(mode: YonedaMode, input: YonedaInput<'_>, c: usize) -> Result<YonedaReport> {
    let report = |base: &FinCategory, lhs, rhs, images: Vec<usize>, table| YonedaReport {
        mode,
        object: base.object_name(c).to_string(),
        lhs,
        rhs,
        bijection: bijective(&images, rhs),
        map_table: table,
    };
    match (mode, input) {
        (YonedaMode::HomFunctor, YonedaInput::Functor(f)) => {
            if f.variance != Variance::Covariant {
                return Err(Error::Precondition("hom form needs a covariant functor".into()));
            }
            let base = &f.base;
            let h = SetFunctor::hom_from(base.clone(), c);
            let nats = natural_transformations(&h, f)?;
            let at_id = pos(base.hom(c, c), base.id(c));
            let images: Vec<usize> = nats.iter().map(|eta| eta[c][at_id]).collect();
            let table = nats
                .iter()
                .zip(&images)
                .map(|(eta, &y)| (describe_nat(&h, f, eta), f.sets[c][y].clone()))
                .collect();
            Ok(report(base, nats.len(), f.size(c), images, table))
        }
        (YonedaMode::TensorFunctor, YonedaInput::Functor(p)) => {
            if p.variance != Variance::Contravariant {
                return Err(Error::Precondition("tensor form needs a contravariant functor".into()));
            }
            let base = &p.base;
            let h = SetFunctor::hom_from(base.clone(), c);
            let t = tensor_functors(p, &h)?;
            let mut images = Vec::new();
            let mut table = Vec::new();
            for cls in &t.classes {
                let vals: Vec<usize> =
                    cls.iter().map(|&(x, a, fi)| p.apply(base.hom(c, x)[fi], a)).collect();
                if vals.iter().any(|&v| v != vals[0]) {
                    return Ok(YonedaReport { bijection: false, ..report(base, t.len(), p.size(c), vec![], vec![]) });
                }
                let (x, a, fi) = cls[0];
                table.push((
                    format!("[{}, {}]", base.arrow_name(base.hom(c, x)[fi]), p.sets[x][a]),
                    p.sets[c][vals[0]].clone(),
                ));
                images.push(vals[0]);
            }
            Ok(report(base, t.len(), p.size(c), images, table))
        }
        (YonedaMode::HomFibered, YonedaInput::Fibered(d)) => {
            if !fibered_check(d).fibered_in_sets {
                return Err(Error::Precondition("hom form needs a category fibered in sets".into()));
            }
            let base = &d.base;
            let slice = slice_category(base, c, SliceSide::Over);
            let funs = functors_over(&slice, d);
            let fiber = d.fiber(c);
            let at_id = (0..slice.total.object_count())
                .find(|&o| slice.total.object_name(o) == base.arrow_name(base.id(c)))
                .expect("identity is an object of the slice");
            let images: Vec<usize> = funs.iter().map(|(objs, _)| pos(&fiber, objs[at_id])).collect();
            let table = funs
                .iter()
                .map(|(objs, _)| {
                    let desc: Vec<String> = objs.iter().map(|&o| d.total.object_name(o).to_string()).collect();
                    (desc.join(","), d.total.object_name(objs[at_id]).to_string())
                })
                .collect();
            Ok(report(base, funs.len(), fiber.len(), images, table))
        }
        (YonedaMode::TensorFibered, YonedaInput::Fibered(d)) => {
            if !fibered_check(d).fibered_in_sets {
                return Err(Error::Precondition("tensor form needs a category fibered in sets".into()));
            }
            let base = &d.base;
            let under = slice_category(base, c, SliceSide::Under);
            let comps = tensor_fibered(&under, d)?;
            let fiber = d.fiber(c);
            let mut images = Vec::new();
            let mut table = Vec::new();
            for comp in &comps {
                let vals: Vec<usize> = comp
                    .iter()
                    .map(|&(u, e)| {
                        let f = base.arrow(under.total.object_name(u)).expect("objects are arrows");
                        let lift = d.lifts_into(f, e);
                        d.total.src(lift[0])
                    })
                    .collect();
                if vals.iter().any(|&v| v != vals[0]) {
                    return Ok(YonedaReport { bijection: false, ..report(base, comps.len(), fiber.len(), vec![], vec![]) });
                }
                let (u, e) = comp[0];
                table.push((
                    format!("[{}, {}]", under.total.object_name(u), d.total.object_name(e)),
                    d.total.object_name(vals[0]).to_string(),
                ));
                images.push(pos(&fiber, vals[0]));
            }
            Ok(report(base, comps.len(), fiber.len(), images, table))
        }
        _ => Err(Error::Precondition(format!("{mode:?} got the wrong kind of input"))),
    }
}

fn describe_nat(f: &SetFunctor, g: &SetFunctor, eta: &[Vec<usize>]) -> String {
    let parts: Vec<String> = eta
        .iter()
        .enumerate()
        .flat_map(|(o, comp)| comp.iter().enumerate().map(move |(x, &y)| format!("{}↦{}", f.sets[o][x], g.sets[o][y])))
        .collect();
    format!("{{{}}}", parts.join(" "))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomTensorReport {
    pub lhs: usize,
    pub rhs: usize,
    pub bijection: bool,
}

/// `Nat(P, Hom(F(−), S)) ≅ Hom(P ⊗ F, S)` with `S = {0, …, s-1}`.
pub fn hom_tensor_check(p: &SetFunctor, f: &SetFunctor, s: usize) -> Result<HomTensorReport> {
    let hom = SetFunctor::hom_into(f, s)?;
    let nats = natural_transformations(p, &hom)?;
    let t = tensor_functors(p, f)?;
    let funcs: Vec<Vec<Vec<usize>>> = (0..f.base.object_count()).map(|o| all_functions(f.size(o), s)).collect();
    let rhs = (s as u128).checked_pow(t.len() as u32).map_or(usize::MAX, |v| v.min(usize::MAX as u128) as usize);
    let mut seen = std::collections::HashSet::new();
    let mut ok = true;
    for eta in &nats {
        let mut phi = vec![usize::MAX; t.len()];
        for (k, cls) in t.classes.iter().enumerate() {
            for &(o, a, b) in cls {
                let v = funcs[o][eta[o][a]][b];
                if phi[k] == usize::MAX {
                    phi[k] = v;
                } else if phi[k] != v {
                    ok = false;
                }
            }
        }
        ok &= seen.insert(phi);
    }
    Ok(HomTensorReport { lhs: nats.len(), rhs, bijection: ok && nats.len() == rhs })
}

/// A composable chain `c_0 → … → c_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn objects(&self, c: &FinCategory) -> Vec<usize> {
        let mut v = vec![self.start];
        v.extend(self.arrows.iter().map(|&a| c.tgt(a)));
        v
    }
}

struct NervePresheaf<'a>(&'a FinCategory);

impl Presheaf<1> for NervePresheaf<'_> {
    type Elem = Chain;

    fn elements(&self, deg: [usize; 1]) -> Vec<Chain> {
        let c = self.0;
        let mut chains: Vec<Chain> = (0..c.object_count()).map(|o| Chain { start: o, arrows: vec![] }).collect();
        for _ in 0..deg[0] {
            chains = chains
                .into_iter()
                .flat_map(|ch| {
                    let end = *ch.objects(c).last().unwrap();
                    c.out_of(end).into_iter().map(move |a| {
                        let mut next = ch.clone();
                        next.arrows.push(a);
                        next
                    })
                })
                .collect();
        }
        chains
    }

    fn act(&self, e: &Chain, _: usize, theta: &[usize]) -> Chain {
        let c = self.0;
        let objs = e.objects(c);
        let arrows = theta
            .windows(2)
            .map(|w| (w[0]..w[1]).map(|i| e.arrows[i]).fold(c.id(objs[w[0]]), |acc, a| c.then(acc, a)))
            .collect();
        Chain { start: objs[theta[0]], arrows }
    }

    fn name(&self, e: &Chain) -> String {
        if e.arrows.is_empty() {
            self.0.object_name(e.start).to_string()
        } else {
            e.arrows.iter().map(|&a| self.0.arrow_name(a)).collect::<Vec<_>>().join(",")
        }
    }
}

/// Whether some chain of `len` nonidentity arrows exists.
pub fn has_nondegenerate_chain(c: &FinCategory, len: usize) -> bool {
    let mut frontier: Vec<usize> = (0..c.object_count()).collect();
    for _ in 0..len {
        let mut next: Vec<usize> = frontier
            .iter()
            .flat_map(|&o| c.out_of(o).into_iter().filter(|&a| !c.is_identity(a)).map(|a| c.tgt(a)))
            .collect();
        next.sort();
        next.dedup();
        frontier = next;
        if frontier.is_empty() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Nerve {
    pub complex: Arc<FinSimplicialSet>,
    pub chains: Vec<Chain>,
}

/// The nerve in dimensions `≤ t`, exact when no longer nondegenerate chains exist.
pub fn nerve(c: &FinCategory, t: usize) -> Nerve {
    let exact = !has_nondegenerate_chain(c, t + 1);
    let r = realize(&NervePresheaf(c), [t], [exact]).expect("nerves are simplicial sets");
    Nerve { complex: Arc::new(r.complex), chains: r.elems }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::isomorphic;
    use crate::sset::{delta, j_truncated};

    #[test]
    fn chain_category() {
        let c = FinCategory::chain(2);
        assert_eq!(c.arrow_count(), 6);
        assert_eq!(c.generators().len(), 2);
        let j = c.to_json();
        assert_eq!(FinCategory::from_json(&j).unwrap(), c);
    }

    #[test]
    fn slices_of_an_idempotent() {
        // one object, arrows {id, e} with e∘e = e
        let c = FinCategory::new(vec!["0".into()], vec![("id".into(), 0, 0), ("e".into(), 0, 0)], vec![0], |f, g| {
            Some(if f == 0 { g } else if g == 0 { f } else { 1 })
        })
        .unwrap();
        let c = Arc::new(c);
        for side in [SliceSide::Under, SliceSide::Over] {
            let s = slice_category(&c, 0, side);
            assert_eq!(s.total.object_count(), 2);
            assert_eq!(s.total.arrow_count(), 4);
            let e = s.total.object("e").unwrap();
            assert_eq!(s.total.hom(e, e).len(), 2);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        let mut j = FinCategory::chain(1).to_json();
        j.compose.retain(|t| t[0] != "01" || t[1] != "11");
        j.identities.insert("1".into(), "01".into());
        assert!(FinCategory::from_json(&j).is_err());
    }

    #[test]
    fn nerves() {
        for n in 0..4 {
            let nv = nerve(&FinCategory::chain(n), n + 1);
            assert!(nv.complex.is_exact());
            assert!(isomorphic(&nv.complex, &delta(n)));
        }
        let nv = nerve(&FinCategory::iso_pair(), 3);
        assert!(!nv.complex.is_exact());
        assert!(isomorphic(&nv.complex, &j_truncated(1, 3)));
    }

    #[test]
    fn slices() {
        let c = Arc::new(FinCategory::chain(2));
        let over = slice_category(&c, 1, SliceSide::Over);
        assert_eq!(over.total.object_count(), 2);
        assert!(fibered_check(&over).fibered_in_sets);
        let under = slice_category(&c, 0, SliceSide::Under);
        assert!(fibered_check(&under).cofibered_in_sets);
        let top = slice_category(&c, 2, SliceSide::Over);
        assert_eq!(top.total.object_count(), 3);
        let id = FiberedCategory::new(CatFunctor::identity(Arc::new(FinCategory::iso_pair()))).unwrap();
        assert!(fibered_check(&id).fibered_in_sets);
    }

    #[test]
    fn tensors() {
        let c = Arc::new(FinCategory::chain(2));
        for x in 0..3 {
            for y in 0..3 {
                let t = tensor_functors(&SetFunctor::hom_to(c.clone(), y), &SetFunctor::hom_from(c.clone(), x)).unwrap();
                assert_eq!(t.len(), c.hom(x, y).len());
            }
        }
        let empty = SetFunctor::constant(c.clone(), Variance::Contravariant, &[]);
        let pt = SetFunctor::constant(c.clone(), Variance::Covariant, &["*"]);
        assert!(tensor_functors(&empty, &pt).unwrap().is_empty());
    }

    #[test]
    fn yoneda_on_chain() {
        let c = Arc::new(FinCategory::chain(2));
        let f = SetFunctor::hom_from(c.clone(), 1).coproduct(&SetFunctor::constant(c.clone(), Variance::Covariant, &["a", "b"])).unwrap();
        let p = SetFunctor::hom_to(c.clone(), 2);
        let d = grothendieck_cat(&p);
        assert!(fibered_check(&d).fibered_in_sets);
        for x in 0..3 {
            assert!(yoneda_check(YonedaMode::HomFunctor, YonedaInput::Functor(&f), x).unwrap().bijection);
            assert!(yoneda_check(YonedaMode::TensorFunctor, YonedaInput::Functor(&p), x).unwrap().bijection);
            assert!(yoneda_check(YonedaMode::HomFibered, YonedaInput::Fibered(&d), x).unwrap().bijection);
            assert!(yoneda_check(YonedaMode::TensorFibered, YonedaInput::Fibered(&d), x).unwrap().bijection);
        }
        let r = hom_tensor_check(&p, &f, 2).unwrap();
        assert!(r.bijection, "{r:?}");
    }
}
