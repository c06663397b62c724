//! Exhaustive enumeration of indecomposable modules of bounded dimension.
//!
//! Every module of dimension `d` is an extension of a module of dimension
//! `d - 1` by a simple module sitting in its socle. Starting from the
//! simples, each level extends every isomorphism class of dimension `d - 1`
//! (a multiset of already known indecomposables) by every simple in every
//! possible way and keeps the new indecomposables up to isomorphism.
//!
//! A second, cruder enumerator walks all generator-matrix tuples for each
//! dimension vector; it is only feasible on tiny inputs and serves as an
//! independent cross-check.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::modrep::{self, ModuleRep};

/// Refuse to examine more candidate extensions than this per level.
pub const DEFAULT_CANDIDATE_LIMIT: u64 = 2_000_000;

#[derive(Default)]
struct Registry {
    modules: Vec<ModuleRep>,
    signatures: Vec<Vec<usize>>,
}

impl Registry {
    fn insert(&mut self, m: ModuleRep) -> Result<bool> {
        let sig = m.signature();
        for (k, s) in self.signatures.iter().enumerate() {
            if *s == sig && modrep::is_isomorphic_indecomposable(&self.modules[k], &m)? {
                return Ok(false);
            }
        }
        self.signatures.push(sig);
        self.modules.push(m);
        Ok(true)
    }
}

/// All multisets (as index lists, nondecreasing) of `items` with total dimension `d`.
fn multisets(dims: &[usize], d: usize) -> Vec<Vec<usize>> {
    fn go(dims: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..dims.len() {
            if dims[i] <= left {
                cur.push(i);
                go(dims, i, left - dims[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(dims, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Generator blocks of a module (`dims[t] x dims[s]` per generator).
fn generator_blocks(m: &ModuleRep) -> Vec<Mat> {
    m.algebra().generators().iter().map(|&g| m.block(g)).collect()
}

fn extension_entries(alg: &Algebra, dims: &[usize], v: usize) -> usize {
    alg.generators().iter().filter(|&&g| alg.ends(g).1 == v).map(|&g| dims[alg.ends(g).0]).sum()
}

/// Indecomposable modules of dimension at most `max_dim`, up to isomorphism,
/// sorted by dimension vector.
pub fn enumerate_modules(alg: &Arc<Algebra>, max_dim: usize) -> Result<Vec<ModuleRep>> {
    enumerate_modules_with_limit(alg, max_dim, DEFAULT_CANDIDATE_LIMIT)
}

pub fn enumerate_modules_with_limit(alg: &Arc<Algebra>, max_dim: usize, limit: u64) -> Result<Vec<ModuleRep>> {
    let p = alg.p() as u64;
    let n = alg.vertex_count();
    let mut reg = Registry::default();
    if max_dim == 0 {
        return Ok(vec![]);
    }
    for v in 0..n {
        let mut dims = vec![0; n];
        dims[v] = 1;
        let blocks: Vec<Mat> = alg
            .generators()
            .iter()
            .map(|&g| Mat::zeros(alg.p(), dims[alg.ends(g).1], dims[alg.ends(g).0]))
            .collect();
        let s = ModuleRep::from_generator_blocks(alg, dims, &blocks)?.mark_indecomposable();
        reg.insert(s)?;
    }
    for d in 2..=max_dim {
        let known: Vec<ModuleRep> = reg.modules.iter().filter(|m| m.dim() < d).cloned().collect();
        let kd: Vec<usize> = known.iter().map(|m| m.dim()).collect();
        let bases = multisets(&kd, d - 1);
        let mut cost: u64 = 0;
        let mut plans = Vec::new();
        for ms in &bases {
            let parts: Vec<&ModuleRep> = ms.iter().map(|&i| &known[i]).collect();
            let base = modrep::sum_of(alg, &parts)?;
            for v in 0..n {
                let entries = extension_entries(alg, base.dims(), v) as u32;
                let c = p.checked_pow(entries).unwrap_or(u64::MAX);
                cost = cost.saturating_add(c);
                plans.push((base.clone(), v, entries));
            }
        }
        if cost > limit {
            return Err(Error::Infeasible(format!(
                "dimension {d} needs {cost} candidate extensions over {} (limit {limit})",
                alg.name()
            )));
        }
        for (base, v, entries) in plans {
            extend_all(alg, &base, v, entries, &mut reg)?;
        }
    }
    let mut out = reg.modules;
    out.sort_by(|a, b| (a.dim(), a.dims()).cmp(&(b.dim(), b.dims())));
    Ok(out)
}

fn extend_all(alg: &Arc<Algebra>, base: &ModuleRep, v: usize, entries: u32, reg: &mut Registry) -> Result<()> {
    let p = alg.p();
    let mut dims = base.dims().to_vec();
    dims[v] += 1;
    let old = generator_blocks(base);
    let total = (p as u64).pow(entries);
    // Rows of zeros give the split extension, which is never indecomposable for d >= 2.
    for code in 1..total {
        let mut c = code;
        let mut blocks = Vec::with_capacity(old.len());
        for (&g, b) in alg.generators().iter().zip(&old) {
            let (s, t) = alg.ends(g);
            let mut nb = Mat::zeros(p, dims[t], dims[s]);
            for r in 0..b.rows() {
                for col in 0..b.cols() {
                    nb.set(r, col, b.get(r, col));
                }
            }
            if t == v {
                // the new basis vector is the last coordinate of block v
                for col in 0..base.dims()[s] {
                    nb.set(dims[v] - 1, col, (c % p as u64) as u32);
                    c /= p as u64;
                }
            }
            blocks.push(nb);
        }
        let Ok(m) = ModuleRep::from_generator_blocks(alg, dims.clone(), &blocks) else { continue };
        if modrep::is_indecomposable(&m)? {
            reg.insert(m)?;
        }
    }
    Ok(())
}

/// Indecomposables found by running through every generator-matrix tuple for
/// every dimension vector of total dimension at most `max_dim`.
pub fn enumerate_by_matrices(alg: &Arc<Algebra>, max_dim: usize, limit: u64) -> Result<Vec<ModuleRep>> {
    let p = alg.p() as u64;
    let n = alg.vertex_count();
    let mut reg = Registry::default();
    let mut dim_vectors = Vec::new();
    fn vectors(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if cur.iter().sum::<usize>() > 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 0..=left {
            cur.push(d);
            vectors(n, left - d, cur, out);
            cur.pop();
        }
    }
    vectors(n, max_dim, &mut Vec::new(), &mut dim_vectors);
    let entries_of = |dims: &[usize]| -> u32 {
        alg.generators().iter().map(|&g| dims[alg.ends(g).1] * dims[alg.ends(g).0]).sum::<usize>() as u32
    };
    let cost: u64 = dim_vectors.iter().map(|d| p.checked_pow(entries_of(d)).unwrap_or(u64::MAX)).fold(0, u64::saturating_add);
    if cost > limit {
        return Err(Error::Infeasible(format!("{cost} matrix tuples over {} (limit {limit})", alg.name())));
    }
    for dims in dim_vectors {
        let entries = entries_of(&dims);
        for code in 0..p.pow(entries) {
            let mut c = code;
            let blocks: Vec<Mat> = alg
                .generators()
                .iter()
                .map(|&g| {
                    let (s, t) = alg.ends(g);
                    let mut b = Mat::zeros(alg.p(), dims[t], dims[s]);
                    for r in 0..dims[t] {
                        for col in 0..dims[s] {
                            b.set(r, col, (c % p) as u32);
                            c /= p;
                        }
                    }
                    b
                })
                .collect();
            let Ok(m) = ModuleRep::from_generator_blocks(alg, dims.clone(), &blocks) else { continue };
            if modrep::is_indecomposable(&m)? {
                reg.insert(m)?;
            }
        }
    }
    let mut out = reg.modules;
    out.sort_by(|a, b| (a.dim(), a.dims()).cmp(&(b.dim(), b.dims())));
    Ok(out)
}

/// Pairwise table `ok[i][j] = (Hom(X_i, τ X_j) = 0)`.
pub fn tau_rigidity_table(pool: &[ModuleRep]) -> Result<Vec<Vec<bool>>> {
    let taus: Vec<ModuleRep> = pool.iter().map(modrep::tau).collect();
    pool.iter()
        .map(|x| taus.iter().map(|t| Ok(modrep::hom_dim(x, t)? == 0)).collect())
        .collect()
}

/// Index sets of multiplicity-free τ-rigid sums of pool members.
pub fn tau_rigid_subsets(pool: &[ModuleRep]) -> Result<Vec<Vec<usize>>> {
    let ok = tau_rigidity_table(pool)?;
    let n = pool.len();
    let mut out = Vec::new();
    fn go(ok: &[Vec<bool>], n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in start..n {
            if ok[i][i] && cur.iter().all(|&j| ok[i][j] && ok[j][i]) {
                cur.push(i);
                go(ok, n, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(&ok, n, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Basic τ-tilting modules assembled from the pool.
pub fn enumerate_tau_tilting(alg: &Arc<Algebra>, pool: &[ModuleRep]) -> Result<Vec<ModuleRep>> {
    let n = alg.vertex_count();
    tau_rigid_subsets(pool)?
        .into_iter()
        .filter(|s| s.len() == n)
        .map(|s| modrep::sum_of(alg, &s.iter().map(|&i| &pool[i]).collect::<Vec<_>>()))
        .collect()
}

/// Basic support τ-tilting modules (the zero module included), using the
/// numerical criterion `|T| = |A / Ann T|`.
pub fn enumerate_support_tau_tilting(alg: &Arc<Algebra>, pool: &[ModuleRep]) -> Result<Vec<ModuleRep>> {
    let mut out = Vec::new();
    for s in tau_rigid_subsets(pool)? {
        let t = modrep::sum_of(alg, &s.iter().map(|&i| &pool[i]).collect::<Vec<_>>())?;
        let ann = crate::tautilt::annihilator(&t);
        if s.len() == alg.vertex_count() - crate::algebra::stable_index(&ann) {
            out.push(t);
        }
    }
    Ok(out)
}
