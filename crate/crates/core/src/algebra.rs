//! Finite-dimensional algebras presented by quivers with relations,
//! together with two-sided ideals, quotients and opposite algebras.
//!
//! Conventions: paths compose right to left, so the written path `b*a`
//! means "first `a`, then `b`". An arrow `a: i -> j` satisfies
//! `a = e_j a e_i`. Every algebra built here has a basis made of the
//! primitive idempotents `e_1..e_n` followed by elements of the Jacobson
//! radical, each of which is homogeneous (`b = e_t b e_s` for one pair of
//! vertices).

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{dim_err, Error, Result};
use crate::exactla::{self, Mat, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of parallel paths. Each path lists arrow indices
/// in written order (`b*a` is `[b, a]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub name: String,
    pub p: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Every path of at least this length lies in the relation ideal.
    pub nilpotency: usize,
}

/// Raw data for [`Algebra::new`].
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub name: String,
    pub p: u32,
    pub labels: Vec<String>,
    pub vertex_labels: Vec<String>,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i b_j`.
    pub table: Vec<u32>,
    pub idempotents: Vec<usize>,
    /// `(source, target)` vertex of every basis element.
    pub ends: Vec<(usize, usize)>,
    pub generators: Vec<usize>,
    /// `words[k]` lists generator basis indices whose product (left to right) is `b_k`.
    pub words: Vec<Vec<usize>>,
}

pub struct Algebra {
    name: String,
    p: u32,
    dim: usize,
    labels: Vec<String>,
    vertex_labels: Vec<String>,
    table: Vec<u32>,
    idempotents: Vec<usize>,
    ends: Vec<(usize, usize)>,
    generators: Vec<usize>,
    words: Vec<Vec<usize>>,
    fingerprint: u64,
    opposite: OnceLock<Arc<Algebra>>,
    origin: OnceLock<Weak<Algebra>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Algebra {
    pub fn new(parts: AlgebraParts) -> Result<Arc<Algebra>> {
        let dim = parts.labels.len();
        let n = parts.vertex_labels.len();
        if parts.table.len() != dim * dim * dim {
            return dim_err("structure constant table has wrong size");
        }
        if parts.ends.len() != dim || parts.words.len() != dim {
            return dim_err("ends/words length differs from basis size");
        }
        if parts.idempotents.len() != n {
            return Err(Error::Validation("one idempotent per vertex required".into()));
        }
        let mut hasher = DefaultHasher::new();
        parts.p.hash(&mut hasher);
        dim.hash(&mut hasher);
        parts.table.hash(&mut hasher);
        parts.idempotents.hash(&mut hasher);
        parts.ends.hash(&mut hasher);
        let alg = Algebra {
            name: parts.name,
            p: parts.p,
            dim,
            labels: parts.labels,
            vertex_labels: parts.vertex_labels,
            table: parts.table.into_iter().map(|x| x % parts.p).collect(),
            idempotents: parts.idempotents,
            ends: parts.ends,
            generators: parts.generators,
            words: parts.words,
            fingerprint: hasher.finish(),
            opposite: OnceLock::new(),
            origin: OnceLock::new(),
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let (d, p) = (self.dim, self.p);
        for (v, &e) in self.idempotents.iter().enumerate() {
            if e >= d || self.ends[e] != (v, v) {
                return Err(Error::Validation(format!("idempotent for vertex {v} is malformed")));
            }
        }
        for &(s, t) in &self.ends {
            if s >= self.vertex_count() || t >= self.vertex_count() {
                return Err(Error::Validation("basis element attached to unknown vertex".into()));
            }
        }
        let unit = self.unit();
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&unit, &b) != b || self.mul(&b, &unit) != b {
                return Err(Error::Validation(format!("sum of idempotents is not a unit on {}", self.labels[i])));
            }
            let (s, t) = self.ends[i];
            let sandwiched = self.mul(&self.mul(&self.basis_vector(self.idempotents[t]), &b), &self.basis_vector(self.idempotents[s]));
            if sandwiched != b {
                return Err(Error::Validation(format!("basis element {} is not homogeneous", self.labels[i])));
            }
        }
        for (v, &e) in self.idempotents.iter().enumerate() {
            for (w, &f) in self.idempotents.iter().enumerate() {
                let prod = self.basis_product(e, f);
                let expect = if v == w { self.basis_vector(e) } else { vec![0; d] };
                if prod != expect.as_slice() {
                    return Err(Error::Validation("idempotents are not orthogonal".into()));
                }
            }
        }
        // associativity on basis triples
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.basis_product(j, k).to_vec();
                    let right = self.mul(&self.basis_vector(i), &jk);
                    if left != right {
                        return Err(Error::Validation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        // the span of non-idempotent basis elements must be a nilpotent ideal
        let rad = self.radical_indices();
        let mut power: Vec<Vec<u32>> = rad.iter().map(|&i| self.basis_vector(i)).collect();
        for step in 0..=d {
            for v in &power {
                if self.idempotents.iter().any(|&e| v[e] != 0) {
                    return Err(Error::Validation("radical basis is not closed under products".into()));
                }
            }
            let sub = Subspace::from_vectors(p, d, &power);
            if sub.is_zero() {
                break;
            }
            if step == d {
                return Err(Error::Validation("radical basis is not nilpotent".into()));
            }
            let mut next = Vec::new();
            for v in sub.vectors() {
                for &r in &rad {
                    next.push(self.mul(&v, &self.basis_vector(r)));
                }
            }
            power = next;
        }
        for &g in &self.generators {
            if g >= d || self.idempotents.contains(&g) {
                return Err(Error::Validation("generators must be radical basis elements".into()));
            }
        }
        for k in 0..d {
            if self.idempotents.contains(&k) {
                if !self.words[k].is_empty() {
                    return Err(Error::Validation("idempotents carry empty words".into()));
                }
                continue;
            }
            let w = &self.words[k];
            if w.is_empty() || w.iter().any(|g| !self.generators.contains(g)) {
                return Err(Error::Validation(format!("bad word for {}", self.labels[k])));
            }
            let mut acc = self.basis_vector(w[0]);
            for &g in &w[1..] {
                acc = self.mul(&acc, &self.basis_vector(g));
            }
            if acc != self.basis_vector(k) {
                return Err(Error::Validation(format!("word does not evaluate to {}", self.labels[k])));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }
    /// Number of vertices, which is `|A|`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }
    pub fn ends(&self, k: usize) -> (usize, usize) {
        self.ends[k]
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn word(&self, k: usize) -> &[usize] {
        &self.words[k]
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.fingerprint == other.fingerprint && self.table == other.table)
    }

    pub fn is_idempotent_index(&self, k: usize) -> bool {
        self.idempotents.contains(&k)
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|k| !self.idempotents.contains(k)).collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_vector(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[k] = 1 % self.p;
        v
    }

    pub fn unit(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        for &e in &self.idempotents {
            v[e] = 1 % self.p;
        }
        v
    }

    pub fn idempotent(&self, vertex: usize) -> Vec<u32> {
        self.basis_vector(self.idempotents[vertex])
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let (d, p) = (self.dim, self.p as u64);
        let mut acc = vec![0u64; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = a as u64 * b as u64 % p;
                for (k, &c) in self.basis_product(i, j).iter().enumerate() {
                    if c != 0 {
                        acc[k] += ab * c as u64;
                    }
                }
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    /// Matrix of left multiplication by `x` (columns indexed by basis).
    pub fn left_mult_matrix(&self, x: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Mat::from_col_vecs(self.p, self.dim, &cols)
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult_matrix(&self, x: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Mat::from_col_vecs(self.p, self.dim, &cols)
    }

    pub fn check_element(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.dim {
            return dim_err(format!("element of length {} in algebra of dimension {}", x.len(), self.dim));
        }
        Ok(())
    }

    /// The opposite algebra, cached. Taking the opposite twice returns the
    /// original `Arc` while it is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(orig) = self.origin.get().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let op = opposite_algebra(self);
                let _ = op.origin.set(Arc::downgrade(self));
                op
            })
            .clone()
    }

    /// Basis indices `b` with `b = b e_v` (the basis of `A e_v`).
    pub fn left_projective_basis(&self, vertex: usize) -> Vec<usize> {
        (0..self.dim).filter(|&k| self.ends[k].0 == vertex).collect()
    }
}

fn opposite_algebra(a: &Algebra) -> Arc<Algebra> {
    let d = a.dim;
    let mut table = vec![0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(a.basis_product(j, i));
        }
    }
    let name = match a.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", a.name),
    };
    Algebra::new(AlgebraParts {
        name,
        p: a.p,
        labels: a.labels.clone(),
        vertex_labels: a.vertex_labels.clone(),
        table,
        idempotents: a.idempotents.clone(),
        ends: a.ends.iter().map(|&(s, t)| (t, s)).collect(),
        generators: a.generators.clone(),
        words: a.words.iter().map(|w| w.iter().rev().copied().collect()).collect(),
    })
    .expect("opposite of a valid algebra is valid")
}

pub fn opposite(a: &Arc<Algebra>) -> Arc<Algebra> {
    a.opposite()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

/// Builds the bound quiver algebra `kQ / I`.
pub fn build_algebra(q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    let p = exactla::FieldSpec::new(q.p)?.p();
    let n = q.vertices.len();
    for a in &q.arrows {
        if a.source >= n || a.target >= n {
            return Err(Error::Validation(format!("arrow {} has an endpoint outside the vertex list", a.name)));
        }
    }
    let big_l = q.nilpotency;
    if !q.arrows.is_empty() && big_l < 2 {
        return Err(Error::Validation("nilpotency bound must be at least 2 when arrows exist".into()));
    }
    let endpoints = |path: &[usize]| -> Result<(usize, usize)> {
        for w in path.windows(2) {
            if q.arrows[w[0]].source != q.arrows[w[1]].target {
                return Err(Error::Validation("relation term is not a path".into()));
            }
        }
        Ok((q.arrows[*path.last().unwrap()].source, q.arrows[path[0]].target))
    };
    for (ri, r) in q.relations.iter().enumerate() {
        if r.terms.is_empty() {
            return Err(Error::Validation(format!("relation {ri} is empty")));
        }
        let mut ends = None;
        for (_, path) in &r.terms {
            if path.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::Validation(format!("relation {ri} uses an unknown arrow")));
            }
            if path.len() < 2 {
                return Err(Error::Validation(format!(
                    "relation {ri} has a term of length {} (relations must lie in the square of the arrow ideal)",
                    path.len()
                )));
            }
            let e = endpoints(path)?;
            if *ends.get_or_insert(e) != e {
                return Err(Error::Validation(format!("relation {ri} mixes non-parallel paths")));
            }
        }
    }

    // all paths of length <= L
    let mut paths: Vec<Path> = (0..n).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier: Vec<Path> = paths.clone();
    for _ in 0..big_l {
        let mut next = Vec::new();
        for path in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == path.target {
                    let mut arrows = vec![ai];
                    arrows.extend_from_slice(&path.arrows);
                    next.push(Path { source: path.source, target: a.target, arrows });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, path)| ((path.source, path.arrows.clone()), i)).collect();
    let np = paths.len();
    let concat = |u: &Path, w: &Path| -> Option<Path> {
        if u.source != w.target {
            return None;
        }
        let mut arrows = u.arrows.clone();
        arrows.extend_from_slice(&w.arrows);
        Some(Path { source: w.source, target: u.target, arrows })
    };

    // Column order for elimination: longest paths first so pivots land on long paths.
    let mut col_order: Vec<usize> = (0..np).collect();
    col_order.sort_by(|&a, &b| paths[b].len().cmp(&paths[a].len()).then(a.cmp(&b)));
    let mut position = vec![0; np];
    for (pos, &c) in col_order.iter().enumerate() {
        position[c] = pos;
    }

    let mut gens: Vec<Vec<u32>> = Vec::new();
    for r in &q.relations {
        let (rs, rt) = endpoints(&r.terms[0].1)?;
        for u in paths.iter().filter(|u| u.source == rt) {
            for w in paths.iter().filter(|w| w.target == rs) {
                let mut v = vec![0u32; np];
                for (c, term) in &r.terms {
                    let t = Path { source: rs, target: rt, arrows: term.clone() };
                    let full = concat(&concat(u, &t).unwrap(), w).unwrap();
                    if full.len() > big_l {
                        continue;
                    }
                    let idx = index[&(full.source, full.arrows)];
                    let pos = position[idx];
                    v[pos] = exactla::add(v[pos], exactla::reduce(*c, p), p);
                }
                if v.iter().any(|&x| x != 0) {
                    gens.push(v);
                }
            }
        }
    }
    let ideal = Subspace::from_vectors(p, np, &gens);
    let to_permuted = |path_idx: usize| position[path_idx];
    for (i, path) in paths.iter().enumerate() {
        if path.len() == big_l {
            let mut v = vec![0u32; np];
            v[to_permuted(i)] = 1;
            if !ideal.contains(&v)? {
                return Err(Error::Validation(format!(
                    "nilpotency bound {big_l} is not implied by the relations (path of length {big_l} survives)"
                )));
            }
        }
    }
    for &pc in ideal.pivots() {
        if paths[col_order[pc]].len() < 2 {
            return Err(Error::Validation("relations are not admissible".into()));
        }
    }
    let mut basis_paths: Vec<usize> = ideal.non_pivots().into_iter().map(|pos| col_order[pos]).collect();
    basis_paths.sort_by(|&a, &b| paths[a].len().cmp(&paths[b].len()).then(a.cmp(&b)));
    let dim = basis_paths.len();
    let basis_pos: HashMap<usize, usize> = ideal
        .non_pivots()
        .into_iter()
        .map(|pos| (pos, basis_paths.iter().position(|&b| b == col_order[pos]).unwrap()))
        .collect();

    let mut table = vec![0u32; dim * dim * dim];
    for (i, &bi) in basis_paths.iter().enumerate() {
        for (j, &bj) in basis_paths.iter().enumerate() {
            let Some(prod) = concat(&paths[bi], &paths[bj]) else { continue };
            if prod.len() > big_l {
                continue;
            }
            let mut v = vec![0u32; np];
            v[to_permuted(index[&(prod.source, prod.arrows)])] = 1;
            let red = ideal.reduce(&v);
            for (pos, &x) in red.iter().enumerate() {
                if x != 0 {
                    table[(i * dim + j) * dim + basis_pos[&pos]] = x;
                }
            }
        }
    }
    let label_of = |path: &Path| -> String {
        if path.arrows.is_empty() {
            format!("e{}", q.vertices[path.source])
        } else {
            path.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    };
    let labels: Vec<String> = basis_paths.iter().map(|&b| label_of(&paths[b])).collect();
    let idempotents: Vec<usize> = (0..n).collect();
    let ends = basis_paths.iter().map(|&b| (paths[b].source, paths[b].target)).collect();
    let arrow_basis: HashMap<usize, usize> = basis_paths
        .iter()
        .enumerate()
        .filter(|(_, &b)| paths[b].len() == 1)
        .map(|(k, &b)| (paths[b].arrows[0], k))
        .collect();
    let generators: Vec<usize> = (0..q.arrows.len()).map(|a| arrow_basis[&a]).collect();
    let words = basis_paths.iter().map(|&b| paths[b].arrows.iter().map(|a| arrow_basis[a]).collect()).collect();
    Algebra::new(AlgebraParts {
        name: q.name.clone(),
        p,
        labels,
        vertex_labels: q.vertices.clone(),
        table,
        idempotents,
        ends,
        generators,
        words,
    })
}

/// A two-sided ideal, stored extensionally as a subspace of the algebra.
#[derive(Clone)]
pub struct Ideal {
    alg: Arc<Algebra>,
    space: Subspace,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal(dim {} in {})", self.space.dim(), self.alg.name())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.space == other.space
    }
}

impl Ideal {
    pub fn zero(alg: &Arc<Algebra>) -> Ideal {
        Ideal { alg: alg.clone(), space: Subspace::zero(alg.p(), alg.dim()) }
    }

    pub fn whole(alg: &Arc<Algebra>) -> Ideal {
        Ideal { alg: alg.clone(), space: Subspace::full(alg.p(), alg.dim()) }
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn from_generators(alg: &Arc<Algebra>, gens: &[Vec<u32>]) -> Result<Ideal> {
        for g in gens {
            alg.check_element(g)?;
        }
        let mut space = Subspace::from_vectors(alg.p(), alg.dim(), gens);
        loop {
            let mut vecs = space.vectors();
            for v in space.vectors() {
                for k in 0..alg.dim() {
                    let b = alg.basis_vector(k);
                    vecs.push(alg.mul(&b, &v));
                    vecs.push(alg.mul(&v, &b));
                }
            }
            let next = Subspace::from_vectors(alg.p(), alg.dim(), &vecs);
            if next.dim() == space.dim() {
                return Ok(Ideal { alg: alg.clone(), space });
            }
            space = next;
        }
    }

    /// Wraps a subspace after checking closure under both multiplications.
    pub fn from_subspace(alg: &Arc<Algebra>, space: Subspace) -> Result<Ideal> {
        if space.ambient_dim() != alg.dim() {
            return dim_err("ideal subspace lives in the wrong ambient space");
        }
        for v in space.vectors() {
            for k in 0..alg.dim() {
                let b = alg.basis_vector(k);
                if !space.contains(&alg.mul(&b, &v))? || !space.contains(&alg.mul(&v, &b))? {
                    return Err(Error::Validation("subspace is not a two-sided ideal".into()));
                }
            }
        }
        Ok(Ideal { alg: alg.clone(), space })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn space(&self) -> &Subspace {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, x: &[u32]) -> Result<bool> {
        self.space.contains(x)
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if !self.alg.same_as(&other.alg) {
            return dim_err("ideals live in different algebras");
        }
        Ok(())
    }

    /// `IJ`, spanned by products `xy` with `x` in `I` and `y` in `J`.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut vecs = Vec::new();
        for x in self.space.vectors() {
            for y in other.space.vectors() {
                vecs.push(self.alg.mul(&x, &y));
            }
        }
        Ok(Ideal { alg: self.alg.clone(), space: Subspace::from_vectors(self.alg.p(), self.alg.dim(), &vecs) })
    }

    pub fn power(&self, k: usize) -> Ideal {
        if k == 0 {
            return Ideal::whole(&self.alg);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self).expect("same algebra");
        }
        acc
    }

    /// The stable part: the fixed point of `I ⊇ I^2 ⊇ I^3 ⊇ ...`.
    pub fn stable_part(&self) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.product(self).expect("same algebra");
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.stable_part().is_zero()
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self).expect("same algebra").dim() == self.dim()
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        self.space.is_subspace_of(&other.space)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        Ok(Ideal { alg: self.alg.clone(), space: self.space.sum(&other.space)? })
    }
}

/// Number of vertices `i` with `I · A e_i = A e_i`.
pub fn stable_index(ideal: &Ideal) -> usize {
    let alg = ideal.algebra();
    (0..alg.vertex_count())
        .filter(|&v| {
            let proj: Vec<Vec<u32>> = alg.left_projective_basis(v).into_iter().map(|k| alg.basis_vector(k)).collect();
            let mut prods = Vec::new();
            for x in ideal.space().vectors() {
                for y in &proj {
                    prods.push(alg.mul(&x, y));
                }
            }
            Subspace::from_vectors(alg.p(), alg.dim(), &prods).dim() == proj.len()
        })
        .count()
}

/// `A / I` with the data needed to move modules between `A` and `A / I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Arc<Algebra>,
    /// `dim(A/I) x dim(A)`: coordinates of the coset of each basis element.
    pub projection: Mat,
    /// Basis index in `A` representing each basis element of the quotient.
    pub section: Vec<usize>,
    /// Vertex of `A` to vertex of `A/I` (absent when `e_v` lies in `I`).
    pub vertex_map: Vec<Option<usize>>,
}

pub fn quotient_algebra(alg: &Arc<Algebra>, ideal: &Ideal) -> Result<QuotientAlgebra> {
    if !alg.same_as(ideal.algebra()) {
        return dim_err("ideal belongs to a different algebra");
    }
    let (d, p) = (alg.dim(), alg.p());
    // Eliminate with radical coordinates first (reverse basis order), idempotents last,
    // so surviving idempotents are never pivots.
    let mut order: Vec<usize> = alg.radical_indices().into_iter().rev().collect();
    order.extend(alg.idempotents().iter().copied());
    let mut pos = vec![0; d];
    for (i, &k) in order.iter().enumerate() {
        pos[k] = i;
    }
    let permute = |v: &[u32]| -> Vec<u32> {
        let mut w = vec![0; d];
        for k in 0..d {
            w[pos[k]] = v[k];
        }
        w
    };
    let space = Subspace::from_vectors(p, d, &ideal.space().vectors().iter().map(|v| permute(v)).collect::<Vec<_>>());
    let mut section: Vec<usize> = space.non_pivots().into_iter().map(|i| order[i]).collect();
    section.sort_unstable();
    let qd = section.len();
    let mut coset_index = vec![usize::MAX; d];
    for (r, &k) in section.iter().enumerate() {
        coset_index[pos[k]] = r;
    }
    let project = |v: &[u32]| -> Vec<u32> {
        let red = space.reduce(&permute(v));
        let mut out = vec![0; qd];
        for (i, &x) in red.iter().enumerate() {
            if x != 0 {
                out[coset_index[i]] = x;
            }
        }
        out
    };
    let cols: Vec<Vec<u32>> = (0..d).map(|k| project(&alg.basis_vector(k))).collect();
    let projection = Mat::from_col_vecs(p, qd, &cols);

    let mut vertex_map = vec![None; alg.vertex_count()];
    let mut vertex_labels = Vec::new();
    let mut idempotents = Vec::new();
    for (v, &e) in alg.idempotents().iter().enumerate() {
        if let Some(r) = section.iter().position(|&k| k == e) {
            vertex_map[v] = Some(vertex_labels.len());
            vertex_labels.push(alg.vertex_labels()[v].clone());
            idempotents.push(r);
        }
    }
    let mut table = vec![0u32; qd * qd * qd];
    for (i, &bi) in section.iter().enumerate() {
        for (j, &bj) in section.iter().enumerate() {
            let prod = project(alg.basis_product(bi, bj));
            table[(i * qd + j) * qd..(i * qd + j + 1) * qd].copy_from_slice(&prod);
        }
    }
    let ends = section
        .iter()
        .map(|&k| {
            let (s, t) = alg.ends(k);
            (vertex_map[s].expect("surviving element at dead vertex"), vertex_map[t].expect("surviving element at dead vertex"))
        })
        .collect();
    let generators: Vec<usize> = (0..qd).filter(|r| !idempotents.contains(r)).collect();
    let words = (0..qd).map(|r| if idempotents.contains(&r) { vec![] } else { vec![r] }).collect();
    let algebra = Algebra::new(AlgebraParts {
        name: format!("{}/I{}", alg.name(), ideal.dim()),
        p,
        labels: section.iter().map(|&k| alg.labels()[k].clone()).collect(),
        vertex_labels,
        table,
        idempotents,
        ends,
        generators,
        words,
    })?;
    Ok(QuotientAlgebra { algebra, projection, section, vertex_map })
}

/// Trace ideal of a projective module: the sum of images of all maps `P -> A`.
pub fn trace_ideal(proj: &crate::modrep::ModuleRep) -> Result<Ideal> {
    use crate::modrep;
    if !modrep::is_projective(proj)? {
        return Err(Error::Precondition("trace ideal requested for a non-projective module".into()));
    }
    let alg = proj.algebra().clone();
    let reg = modrep::regular(&alg);
    let mut vecs = Vec::new();
    for f in modrep::hom_space(proj, &reg.module)? {
        for c in 0..f.cols() {
            vecs.push(reg.to_algebra_coords(&f.col(c)));
        }
    }
    Ideal::from_subspace(&alg, Subspace::from_vectors(alg.p(), alg.dim(), &vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn span(alg: &Arc<Algebra>, labels: &[&str]) -> Ideal {
        let vecs: Vec<Vec<u32>> = labels
            .iter()
            .map(|l| alg.basis_vector(alg.labels().iter().position(|x| x == l).unwrap()))
            .collect();
        Ideal::from_subspace(alg, Subspace::from_vectors(alg.p(), alg.dim(), &vecs)).unwrap()
    }

    #[test]
    fn a2_has_dimension_three() {
        let a = corpus::a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
    }

    #[test]
    fn a3z_path_enumeration() {
        let a = corpus::a3z();
        // oracle: paths of 1->2->3 are e1 e2 e3 a b b*a; the relation removes b*a
        assert_eq!(a.dim(), 5);
        assert_eq!(a.labels(), &["e1", "e2", "e3", "a", "b"]);
        let (ia, ib) = (3, 4);
        assert!(a.basis_product(ib, ia).iter().all(|&x| x == 0));
    }

    #[test]
    fn loc2_is_dual_numbers() {
        let a = corpus::loc2();
        assert_eq!(a.dim(), 2);
        let x = a.basis_vector(1);
        assert_eq!(a.mul(&x, &x), vec![0, 0]);
    }

    #[test]
    fn non_admissible_relations_rejected() {
        let mut q = corpus::presentation(&corpus::Family::ZeroRelationA3, 2);
        q.relations.push(Relation { terms: vec![(1, vec![0])] });
        assert!(matches!(build_algebra(&q), Err(Error::Validation(_))));
        let mut q = corpus::presentation(&corpus::Family::ZeroRelationA3, 2);
        q.arrows[0].target = 7;
        assert!(matches!(build_algebra(&q), Err(Error::Validation(_))));
    }

    #[test]
    fn ideal_generated_by_b() {
        let a = corpus::a3z();
        let i = Ideal::from_generators(&a, &[a.basis_vector(4)]).unwrap();
        assert_eq!(i, span(&a, &["b"]));
        assert!(i.power(2).is_zero());
        assert!(i.is_nilpotent());
        assert!(!i.is_idempotent());
        assert!(i.stable_part().is_zero());
        let whole = Ideal::from_generators(&a, &[a.unit()]).unwrap();
        assert_eq!(whole, Ideal::whole(&a));
        assert!(whole.is_idempotent() && !whole.is_nilpotent());
        assert_eq!(whole.stable_part(), whole);
        let z = Ideal::zero(&a);
        assert!(z.is_idempotent() && z.is_nilpotent());
    }

    #[test]
    fn generator_outside_algebra_is_rejected() {
        let a = corpus::a2();
        assert!(matches!(Ideal::from_generators(&a, &[vec![1, 0]]), Err(Error::Dimension(_))));
    }

    #[test]
    fn arrow_ideal_is_nilpotent() {
        let a = corpus::a2();
        assert!(span(&a, &["a"]).stable_part().is_zero());
    }

    #[test]
    fn quotient_of_a3z_by_b() {
        let a = corpus::a3z();
        let i = span(&a, &["b"]);
        assert_eq!(stable_index(&i), 0);
        let q = quotient_algebra(&a, &i).unwrap();
        assert_eq!(q.algebra.dim(), 4);
        assert_eq!(q.algebra.labels(), &["e1", "e2", "e3", "a"]);
        assert_eq!(q.algebra.vertex_count(), 3);
        assert_eq!(stable_index(&Ideal::zero(&a)), 0);
    }

    #[test]
    fn quotient_dropping_a_vertex() {
        let a = corpus::a2();
        let i = Ideal::from_generators(&a, &[a.idempotent(1)]).unwrap();
        assert_eq!(i, span(&a, &["e2", "a"]));
        assert_eq!(stable_index(&i), 1);
        let q = quotient_algebra(&a, &i).unwrap();
        assert_eq!(q.algebra.vertex_count(), 1);
        assert_eq!(q.vertex_map, vec![Some(0), None]);
    }

    #[test]
    fn opposite_twice_is_original() {
        let a = corpus::a3z();
        let oo = a.opposite().opposite();
        assert!(oo.same_as(&a));
        assert_eq!(a.opposite().ends(3), (1, 0));
    }
}
