//! Minimal projective resolutions, Ext and Tor, tensor products over the
//! algebra, projective dimension and self-orthogonality verdicts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::modrep::{self, check_same_algebra, ModuleRep, ProjectiveCover};

pub const DEFAULT_HORIZON: usize = 20;

/// Minimal projective resolution computed up to some depth.
pub struct Resolution {
    /// `syzygies[k] = Ω^k M`.
    pub syzygies: Vec<ModuleRep>,
    /// `covers[k]` is the projective cover `P_k -> Ω^k M`.
    pub covers: Vec<ProjectiveCover>,
    /// `inclusions[k]: Ω^{k+1} M -> P_k`.
    pub inclusions: Vec<Mat>,
}

impl Resolution {
    pub fn new(m: &ModuleRep) -> Resolution {
        Resolution { syzygies: vec![m.clone()], covers: vec![], inclusions: vec![] }
    }

    /// Makes `Ω^k M` (and all covers below it) available.
    pub fn extend_to(&mut self, k: usize) {
        while self.syzygies.len() <= k {
            let last = self.syzygies.last().expect("nonempty");
            let (omega, incl, cover) = modrep::syzygy_with_cover(last);
            self.syzygies.push(omega);
            self.covers.push(cover);
            self.inclusions.push(incl);
        }
    }

    pub fn syzygy(&mut self, k: usize) -> &ModuleRep {
        self.extend_to(k);
        &self.syzygies[k]
    }

    /// Differential `d_k: P_k -> P_{k-1}` for `k >= 1`.
    pub fn differential(&mut self, k: usize) -> Mat {
        self.extend_to(k + 1);
        self.inclusions[k - 1].dot(&self.covers[k].map)
    }

    /// Least `k <= limit` with `Ω^k M` projective.
    pub fn projective_dimension(&mut self, limit: usize) -> Option<usize> {
        for k in 0..=limit {
            self.extend_to(k + 1);
            if self.syzygies[k + 1].is_zero() {
                return Some(k);
            }
        }
        None
    }

    /// `dim Ext^i(M, N)`.
    pub fn ext(&mut self, n: &ModuleRep, i: usize) -> Result<usize> {
        check_same_algebra(self.syzygies[0].algebra(), n.algebra())?;
        if i == 0 {
            return modrep::hom_dim(&self.syzygies[0], n);
        }
        self.extend_to(i);
        let omega = &self.syzygies[i];
        if omega.is_zero() {
            return Ok(0);
        }
        let hom_omega = modrep::hom_dim(omega, n)?;
        if hom_omega == 0 {
            return Ok(0);
        }
        let p = n.p();
        let restricted: Vec<Vec<u32>> = modrep::hom_space(&self.covers[i - 1].module, n)?
            .iter()
            .map(|f| f.dot(&self.inclusions[i - 1]).flatten())
            .collect();
        let rank = Subspace::from_vectors(p, omega.dim() * n.dim(), &restricted).dim();
        Ok(hom_omega - rank)
    }
}

/// `dim Ext^i_A(M, N)`.
pub fn ext(m: &ModuleRep, n: &ModuleRep, i: usize) -> Result<usize> {
    Resolution::new(m).ext(n, i)
}

/// `X ⊗_A M` for a right module `X` (a module over the opposite algebra).
pub struct TensorSpace {
    offsets: Vec<usize>,
    x_dims: Vec<usize>,
    m_dims: Vec<usize>,
    ambient: usize,
    pub relations: Subspace,
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.ambient - self.relations.dim()
    }

    fn index(&self, v: usize, i: usize, j: usize) -> usize {
        self.offsets[v] + i * self.m_dims[v] + j
    }

    /// Coordinates (in `⊕_v X_v ⊗ M_v`) of representatives of a basis of the tensor product.
    pub fn basis_representatives(&self) -> Vec<usize> {
        self.relations.non_pivots()
    }
}

fn check_sides(x: &ModuleRep, m: &ModuleRep) -> Result<()> {
    if !x.algebra().same_as(&m.algebra().opposite()) {
        return Err(Error::Dimension(format!(
            "tensor product needs a right module over {} (got a module over {})",
            m.algebra().name(),
            x.algebra().name()
        )));
    }
    Ok(())
}

pub fn tensor_space(x: &ModuleRep, m: &ModuleRep) -> Result<TensorSpace> {
    check_sides(x, m)?;
    let alg = m.algebra();
    let p = alg.p();
    let nv = alg.vertex_count();
    let mut offsets = vec![0; nv];
    let mut ambient = 0;
    for v in 0..nv {
        offsets[v] = ambient;
        ambient += x.dims()[v] * m.dims()[v];
    }
    let mut ts = TensorSpace {
        offsets,
        x_dims: x.dims().to_vec(),
        m_dims: m.dims().to_vec(),
        ambient,
        relations: Subspace::zero(p, ambient),
    };
    let mut rels = Vec::new();
    for &g in alg.generators() {
        let (s, t) = alg.ends(g);
        let xg = x.block(g); // X_t -> X_s (right action by g)
        let gm = m.block(g); // M_s -> M_t
        for i in 0..x.dims()[t] {
            for j in 0..m.dims()[s] {
                // (x_i g) ⊗ m_j - x_i ⊗ (g m_j)
                let mut r = vec![0u32; ambient];
                for a in 0..x.dims()[s] {
                    let c = xg.get(a, i);
                    if c != 0 {
                        let k = ts.index(s, a, j);
                        r[k] = crate::exactla::add(r[k], c, p);
                    }
                }
                for b in 0..m.dims()[t] {
                    let c = gm.get(b, j);
                    if c != 0 {
                        let k = ts.index(t, i, b);
                        r[k] = crate::exactla::sub(r[k], c, p);
                    }
                }
                if r.iter().any(|&c| c != 0) {
                    rels.push(r);
                }
            }
        }
    }
    ts.relations = Subspace::from_vectors(p, ambient, &rels);
    Ok(ts)
}

/// `dim X ⊗_A M`.
pub fn tensor_dim(x: &ModuleRep, m: &ModuleRep) -> Result<usize> {
    Ok(tensor_space(x, m)?.dim())
}

/// Rank of `X ⊗ f: X ⊗ M -> X ⊗ N`.
fn induced_tensor_rank(x: &ModuleRep, m: &ModuleRep, n: &ModuleRep, f: &Mat) -> Result<usize> {
    let tm = tensor_space(x, m)?;
    let tn = tensor_space(x, n)?;
    let p = m.p();
    let nv = m.algebra().vertex_count();
    let mut images = tn.relations.vectors();
    let base = images.len();
    for v in 0..nv {
        for i in 0..tm.x_dims[v] {
            for j in 0..tm.m_dims[v] {
                let mut img = vec![0u32; tn.ambient];
                for r in 0..n.dims()[v] {
                    let c = f.get(n.offset(v) + r, m.offset(v) + j);
                    if c != 0 {
                        img[tn.index(v, i, r)] = c;
                    }
                }
                images.push(img);
            }
        }
    }
    Ok(Subspace::from_vectors(p, tn.ambient, &images).dim() - base)
}

/// `dim Tor_i^A(X, M)` for a right module `X`.
pub fn tor(x: &ModuleRep, m: &ModuleRep, i: usize) -> Result<usize> {
    check_sides(x, m)?;
    let mut res = Resolution::new(m);
    tor_with(x, &mut res, i)
}

pub fn tor_with(x: &ModuleRep, res: &mut Resolution, i: usize) -> Result<usize> {
    if i == 0 {
        return tensor_dim(x, &res.syzygies[0]);
    }
    res.extend_to(i);
    let omega = res.syzygies[i].clone();
    if omega.is_zero() {
        return Ok(0);
    }
    let whole = tensor_dim(x, &omega)?;
    let rank = induced_tensor_rank(x, &omega, &res.covers[i - 1].module, &res.inclusions[i - 1])?;
    Ok(whole - rank)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pd {
    Finite(usize),
    AtLeast(usize),
}

impl Pd {
    pub fn finite(self) -> Option<usize> {
        match self {
            Pd::Finite(n) => Some(n),
            Pd::AtLeast(_) => None,
        }
    }
}

/// Projective dimension searched up to the horizon (the zero module gets 0).
pub fn pd_up_to(m: &ModuleRep, horizon: usize) -> Pd {
    match Resolution::new(m).projective_dimension(horizon) {
        Some(n) => Pd::Finite(n),
        None => Pd::AtLeast(horizon),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    /// All Ext groups up to the projective dimension vanish.
    FinitePd { pd: usize },
    /// `Ω^start ≅ Ω^(start+period)` and one full period of Ext vanishes.
    Periodic { start: usize, period: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum VanishingVerdict {
    Holds { certificate: Certificate },
    Fails { degree: usize, dim: usize },
    UnknownBeyondHorizon { horizon: usize },
}

impl VanishingVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, VanishingVerdict::Holds { .. })
    }
    pub fn fails(&self) -> bool {
        matches!(self, VanishingVerdict::Fails { .. })
    }
}

/// Decides `Ext^i(M, M) = 0` for all `i >= 1` when a certificate appears
/// within the horizon.
pub fn is_self_orthogonal(m: &ModuleRep, horizon: usize) -> VanishingVerdict {
    let mut res = Resolution::new(m);
    self_orthogonality_with(&mut res, horizon)
}

pub fn self_orthogonality_with(res: &mut Resolution, horizon: usize) -> VanishingVerdict {
    let m = res.syzygies[0].clone();
    for k in 1..=horizon.max(1) {
        let e = match res.ext(&m, k) {
            Ok(e) => e,
            Err(_) => return VanishingVerdict::UnknownBeyondHorizon { horizon },
        };
        if e != 0 {
            return VanishingVerdict::Fails { degree: k, dim: e };
        }
        if res.syzygies[k].is_zero() {
            return VanishingVerdict::Holds { certificate: Certificate::FinitePd { pd: k - 1 } };
        }
        let yk = res.syzygies[k].clone();
        for j in 0..k {
            let yj = &res.syzygies[j];
            if yj.dims() == yk.dims() && modrep::is_isomorphic(yj, &yk).unwrap_or(false) {
                return VanishingVerdict::Holds { certificate: Certificate::Periodic { start: j, period: k - j } };
            }
        }
    }
    VanishingVerdict::UnknownBeyondHorizon { horizon }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::modrep::{dual, projective, regular, simple, sum_of};

    #[test]
    fn ext_examples() {
        let a = corpus::a2();
        assert_eq!(ext(&simple(&a, 0), &simple(&a, 1), 1).unwrap(), 1);
        let reg = regular(&a).module;
        for i in 1..4 {
            assert_eq!(ext(&reg, &simple(&a, 0), i).unwrap(), 0);
        }
        let b = corpus::a3z();
        assert_eq!(ext(&simple(&b, 0), &simple(&b, 2), 2).unwrap(), 1);
        assert_eq!(ext(&simple(&b, 0), &simple(&b, 2), 0).unwrap(), 0);
    }

    #[test]
    fn tensor_unit_law() {
        let a = corpus::a3z();
        let right_reg = regular(&a.opposite()).module;
        for m in [simple(&a, 0), projective(&a, 0), projective(&a, 1)] {
            assert_eq!(tensor_dim(&right_reg, &m).unwrap(), m.dim());
        }
        // side mismatch
        assert!(tensor_dim(&simple(&a, 0), &simple(&a, 0)).is_err());
    }

    #[test]
    fn tor_vanishes_on_projectives() {
        let a = corpus::a3z();
        let x = simple(&a.opposite(), 1);
        for i in 1..4 {
            assert_eq!(tor(&x, &projective(&a, 0), i).unwrap(), 0);
        }
    }

    #[test]
    fn ext_tor_duality() {
        let a = corpus::a3z();
        let op = a.opposite();
        for v in 0..3 {
            for w in 0..3 {
                let x = simple(&op, v);
                let m = simple(&a, w);
                for i in 0..4 {
                    assert_eq!(tor(&x, &m, i).unwrap(), ext(&m, &dual(&x), i).unwrap());
                }
            }
        }
    }

    #[test]
    fn projective_dimensions() {
        let a = corpus::a2();
        assert_eq!(pd_up_to(&projective(&a, 0), 5), Pd::Finite(0));
        assert_eq!(pd_up_to(&simple(&a, 0), 5), Pd::Finite(1));
        let l = corpus::loc2();
        assert_eq!(pd_up_to(&simple(&l, 0), 7), Pd::AtLeast(7));
    }

    #[test]
    fn self_orthogonality_examples() {
        let a = corpus::a2();
        let reg = regular(&a).module;
        let m = sum_of(&a, &[&reg, &projective(&a, 0)]).unwrap();
        assert!(is_self_orthogonal(&m, 5).holds());
        let b = corpus::a3z();
        let t = sum_of(&b, &[&projective(&b, 0), &simple(&b, 0), &simple(&b, 2)]).unwrap();
        assert_eq!(is_self_orthogonal(&t, 4), VanishingVerdict::Fails { degree: 2, dim: 1 });
        let l = corpus::loc2();
        assert_eq!(is_self_orthogonal(&simple(&l, 0), 4), VanishingVerdict::Fails { degree: 1, dim: 1 });
    }

    #[test]
    fn periodic_certificate_on_self_injective_algebra() {
        let a = corpus::nakayama(3, 2);
        // Ω permutes the simples with period 3, and Ext^1(S_v, S_v) vanishes until degree 3
        match is_self_orthogonal(&simple(&a, 0), 10) {
            VanishingVerdict::Fails { degree, .. } => assert_eq!(degree, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
