use std::sync::Arc;

use proptest::prelude::*;

use taucheck::algebra::{stable_index, Algebra, Ideal};
use taucheck::corpus::{self, Family};
use taucheck::enumerate::enumerate_modules;
use taucheck::exactla::{Mat, Subspace};
use taucheck::format;
use taucheck::homology;
use taucheck::modrep::{self, ModuleRep};

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

fn matrix(max: usize) -> impl Strategy<Value = Mat> {
    (prime(), 1..=max, 1..=max).prop_flat_map(|(p, r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |d| Mat::from_data(p, r, c, d).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Mat> {
    (prime(), 1..=max).prop_flat_map(|(p, n)| {
        proptest::collection::vec(0..p, n * n).prop_map(move |d| Mat::from_data(p, n, n, d).unwrap())
    })
}

fn same_width_pair(max: usize) -> impl Strategy<Value = (Mat, Mat)> {
    (prime(), 1..=max, 1..=max, 1..=max).prop_flat_map(|(p, r1, r2, c)| {
        (proptest::collection::vec(0..p, r1 * c), proptest::collection::vec(0..p, r2 * c)).prop_map(move |(x, y)| {
            (Mat::from_data(p, r1, c, x).unwrap(), Mat::from_data(p, r2, c, y).unwrap())
        })
    })
}

fn families() -> Vec<Family> {
    corpus::standard_corpus()
}

struct Pools {
    algebras: Vec<Arc<Algebra>>,
    pools: Vec<Vec<ModuleRep>>,
}

fn pools() -> &'static Pools {
    static POOLS: std::sync::OnceLock<Pools> = std::sync::OnceLock::new();
    POOLS.get_or_init(|| {
        let algebras: Vec<_> = families().iter().map(|f| corpus::build(f, 2)).collect();
        let pools = algebras.iter().map(|a| enumerate_modules(a, 3).unwrap()).collect();
        Pools { algebras, pools }
    })
}

/// A direct sum of one to three pool modules over a corpus algebra.
fn module() -> impl Strategy<Value = (usize, ModuleRep)> {
    (0..families().len(), proptest::collection::vec(any::<prop::sample::Index>(), 1..=3)).prop_map(|(a, picks)| {
        let p = pools();
        let pool = &p.pools[a];
        let parts: Vec<&ModuleRep> = picks.iter().map(|i| &pool[i.index(pool.len())]).collect();
        (a, modrep::sum_of(&p.algebras[a], &parts).unwrap())
    })
}

fn pair() -> impl Strategy<Value = (ModuleRep, ModuleRep)> {
    (0..families().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(a, i, j)| {
        let pool = &pools().pools[a];
        (pool[i.index(pool.len())].clone(), pool[j.index(pool.len())].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_and_solve(m in square(5)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(inv.checked_mul(&m).unwrap(), Mat::identity(m.p(), m.rows()));
                let b = Mat::identity(m.p(), m.rows());
                prop_assert_eq!(m.solve(&b).unwrap().unwrap(), inv);
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn solve_reproduces_image_vectors(m in matrix(5), seed in any::<u64>()) {
        let x: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i * 3)) % m.p() as u64) as u32).collect();
        let b = m.mul_vec(&x);
        let bm = Mat::from_data(m.p(), m.rows(), 1, b.clone()).unwrap();
        let y = m.solve(&bm).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y.col(0)), b);
    }

    #[test]
    fn subspace_dimension_formula((a, b) in same_width_pair(5)) {
        let u = Subspace::from_vectors(a.p(), a.cols(), &(0..a.rows()).map(|r| a.row(r).to_vec()).collect::<Vec<_>>());
        let w = Subspace::from_vectors(b.p(), b.cols(), &(0..b.rows()).map(|r| b.row(r).to_vec()).collect::<Vec<_>>());
        let s = u.sum(&w).unwrap();
        let i = u.intersection(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u).unwrap() && u.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn duality_is_an_involution((_, m) in module()) {
        let dd = modrep::dual(&modrep::dual(&m));
        prop_assert!(modrep::is_isomorphic(&m, &dd).unwrap());
    }

    #[test]
    fn hom_dimensions_dualize((m, n) in pair()) {
        let a = modrep::hom_dim(&m, &n).unwrap();
        let b = modrep::hom_dim(&modrep::dual(&n), &modrep::dual(&m)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn decomposition_counts_summands((_, m) in module()) {
        let d = modrep::decompose(&m).unwrap();
        let total: usize = d.summands.iter().map(|(s, k)| s.dim() * k).sum();
        prop_assert_eq!(total, m.dim());
        let rebuilt: Vec<&ModuleRep> = d.summands.iter().flat_map(|(s, k)| std::iter::repeat_n(s, *k)).collect();
        let sum = modrep::sum_of(m.algebra(), &rebuilt).unwrap();
        prop_assert!(modrep::is_isomorphic(&sum, &m).unwrap());
    }

    #[test]
    fn syzygy_dimension((_, m) in module()) {
        let cover = modrep::projective_cover(&m);
        prop_assert_eq!(cover.map.rank(), m.dim());
        prop_assert_eq!(modrep::syzygy(&m).dim() + m.dim(), cover.module.dim());
        prop_assert_eq!(modrep::top_dims(&cover.module), modrep::top_dims(&m));
    }

    #[test]
    fn tau_kills_exactly_projectives((m, _) in pair()) {
        let t = modrep::tau(&m);
        prop_assert_eq!(t.is_zero(), modrep::is_projective(&m).unwrap());
        if !t.is_zero() {
            prop_assert!(modrep::is_isomorphic(&modrep::tau_inverse(&t), &m).unwrap());
        }
    }

    #[test]
    fn ext_tor_duality((m, x) in pair(), i in 1usize..=3) {
        // Ext^i(M, D X) and Tor_i(X, M) have equal dimension, with X seen over the opposite algebra
        let xop = modrep::dual(&x);
        let e = homology::ext(&m, &x, i).unwrap();
        let t = homology::tor(&xop, &m, i).unwrap();
        prop_assert_eq!(e, t);
    }

    #[test]
    fn ideals_from_basis_subsets(a in 0..6usize, mask in any::<u32>()) {
        let alg = &pools().algebras[a];
        let d = alg.dim();
        let gens: Vec<Vec<u32>> = (0..d).filter(|k| mask >> k & 1 == 1).map(|k| alg.basis_vector(k)).collect();
        let ideal = Ideal::from_generators(alg, &gens).unwrap();
        prop_assert!(ideal.product(&ideal).unwrap().is_subideal_of(&ideal).unwrap());
        let st = ideal.stable_part();
        prop_assert!(st.is_idempotent());
        prop_assert!(st.is_subideal_of(&ideal).unwrap());
        prop_assert_eq!(stable_index(&ideal), stable_index(&st));
        prop_assert_eq!(ideal.is_nilpotent(), st.is_zero());
    }

    #[test]
    fn module_text_round_trip((_, m) in module()) {
        let text = format::write_module(&m, "M");
        let (_, back) = format::parse_module(&text, m.algebra()).unwrap();
        prop_assert!(modrep::is_isomorphic(&m, &back).unwrap());
    }
}
