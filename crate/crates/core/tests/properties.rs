use std::sync::OnceLock;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use subcat::catalog::{Builtin, Catalog, Limits, ModuleId};
use subcat::closures::{serre_closure, torf_closure, tors_closure, SubcatBits};
use subcat::lattices::{enumerate, CheckConfig, ClassKind, Family};
use subcat::linalg::Matrix;
use subcat::rep::{hom_basis, Morphism, Representation};

fn catalog(spec: &str, p: u32) -> Catalog {
    spec.parse::<Builtin>().unwrap().build(p, Limits::default()).unwrap()
}

fn a4() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| catalog("an:4:rlr", 2))
}

fn a3_f3() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| catalog("a3", 3))
}

fn family(kind: ClassKind) -> &'static Family {
    static FAMS: OnceLock<Vec<Family>> = OnceLock::new();
    let fams = FAMS.get_or_init(|| {
        ClassKind::ALL
            .iter()
            .map(|&k| enumerate(a3_f3(), k, CheckConfig::default()).unwrap())
            .collect()
    });
    fams.iter().find(|f| f.kind == kind).unwrap()
}

fn invertible(p: u8, n: usize, rng: &mut StdRng) -> Matrix {
    loop {
        let m = Matrix::from_fn(p, n, n, |_, _| rng.gen_range(0..i64::from(p)));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Same module in new bases: M_a becomes g_t M_a g_s^-1.
fn conjugate(m: &Representation, seed: u64) -> Representation {
    let p = m.p();
    let mut rng = StdRng::seed_from_u64(seed);
    let gs: Vec<Matrix> = m.dims().iter().map(|&d| invertible(p, d, &mut rng)).collect();
    let inv: Vec<Matrix> = gs
        .iter()
        .map(|g| {
            let n = g.rows();
            let sol = subcat::linalg::solve(g, &Matrix::identity(p, n)).unwrap().unwrap();
            sol.particular
        })
        .collect();
    let alg = m.algebra();
    let mats = alg
        .arrows()
        .iter()
        .zip(m.mats())
        .map(|(a, x)| gs[a.target].mul(x).unwrap().mul(&inv[a.source]).unwrap())
        .collect();
    Representation::new(alg.clone(), m.dims().to_vec(), mats).unwrap()
}

fn random_morphism(x: &Representation, y: &Representation, coeffs: &[u8]) -> Morphism {
    let basis = hom_basis(x, y).unwrap();
    let p = x.p();
    let c: Vec<u8> = (0..basis.len()).map(|i| coeffs[i % coeffs.len()] % p).collect();
    Morphism::combination(&basis, &c, x, y)
}

fn sum_in(s: SubcatBits, counts: &[usize]) -> ModuleId {
    let members: Vec<usize> = s.iter().collect();
    let mut c = vec![0; a3_f3().len()];
    for (k, &n) in counts.iter().enumerate() {
        c[members[k % members.len()]] += n;
    }
    ModuleId::from_counts(c)
}

fn support_within(cat: &Catalog, m: &Representation, s: SubcatBits) -> bool {
    let id = cat.identify(m).unwrap();
    id.support() & !s.bits() == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closures_are_closure_operators(a in 0u64..1024, b in 0u64..1024) {
        let cat = a4();
        let (s, t) = (SubcatBits(a), SubcatBits(a | b));
        for close in [tors_closure, torf_closure] {
            let cs = close(cat, s).unwrap();
            prop_assert!(s.is_subset(cs));
            prop_assert_eq!(close(cat, cs).unwrap(), cs);
            prop_assert!(cs.is_subset(close(cat, t).unwrap()));
        }
        let cs = serre_closure(cat, s);
        prop_assert!(s.is_subset(cs));
        prop_assert_eq!(serre_closure(cat, cs), cs);
        prop_assert!(cs.is_subset(serre_closure(cat, t)));
    }

    #[test]
    fn closures_sit_in_serre(a in 0u64..1024) {
        let cat = a4();
        let s = SubcatBits(a);
        let serre = serre_closure(cat, s);
        prop_assert!(tors_closure(cat, s).unwrap().is_subset(serre));
        prop_assert!(torf_closure(cat, s).unwrap().is_subset(serre));
    }

    #[test]
    fn identify_ignores_basis(counts in prop::collection::vec(0usize..3, 6), seed: u64) {
        let cat = a3_f3();
        let id = ModuleId::from_counts(counts);
        let m = conjugate(&cat.realize(&id), seed);
        prop_assert_eq!(cat.identify(&m).unwrap(), id);
    }

    #[test]
    fn duality_swaps_tors_and_torf(a in 0u64..1024) {
        let cat = a4();
        let op = cat.opposite().unwrap();
        let s = SubcatBits(a);
        prop_assert_eq!(tors_closure(cat, s).unwrap(), torf_closure(&op, s).unwrap());
        prop_assert_eq!(torf_closure(cat, s).unwrap(), tors_closure(&op, s).unwrap());
        prop_assert_eq!(serre_closure(cat, s), serre_closure(&op, s));
    }

    #[test]
    fn ie_members_contain_images(k in 0usize..64, cx in prop::collection::vec(0usize..2, 3), cy in prop::collection::vec(0usize..2, 3), coeffs in prop::collection::vec(0u8..3, 1..12)) {
        let cat = a3_f3();
        let fam = family(ClassKind::Ie);
        let s = fam.members[k % fam.members.len()];
        prop_assume!(!s.is_empty());
        let x = cat.realize(&sum_in(s, &cx));
        let y = cat.realize(&sum_in(s, &cy));
        let f = random_morphism(&x, &y, &coeffs);
        let (image, _) = f.image().sub_to_rep();
        prop_assert!(support_within(cat, &image, s));
    }

    #[test]
    fn wide_members_contain_kernels_and_cokernels(k in 0usize..64, cx in prop::collection::vec(0usize..2, 3), cy in prop::collection::vec(0usize..2, 3), coeffs in prop::collection::vec(0u8..3, 1..12)) {
        let cat = a3_f3();
        let fam = family(ClassKind::Wide);
        let s = fam.members[k % fam.members.len()];
        prop_assume!(!s.is_empty());
        let x = cat.realize(&sum_in(s, &cx));
        let y = cat.realize(&sum_in(s, &cy));
        let f = random_morphism(&x, &y, &coeffs);
        let (kernel, _) = f.kernel().sub_to_rep();
        let (cokernel, _) = f.cokernel();
        prop_assert!(support_within(cat, &kernel, s));
        prop_assert!(support_within(cat, &cokernel, s));
    }

    #[test]
    fn ike_and_ice_members(k in 0usize..64, cx in prop::collection::vec(0usize..2, 3), cy in prop::collection::vec(0usize..2, 3), coeffs in prop::collection::vec(0u8..3, 1..12)) {
        let cat = a3_f3();
        let ike = family(ClassKind::Ike);
        let s = ike.members[k % ike.members.len()];
        if !s.is_empty() {
            let f = random_morphism(&cat.realize(&sum_in(s, &cx)), &cat.realize(&sum_in(s, &cy)), &coeffs);
            prop_assert!(support_within(cat, &f.kernel().sub_to_rep().0, s));
            prop_assert!(support_within(cat, &f.image().sub_to_rep().0, s));
        }
        let ice = family(ClassKind::Ice);
        let s = ice.members[k % ice.members.len()];
        if !s.is_empty() {
            let f = random_morphism(&cat.realize(&sum_in(s, &cx)), &cat.realize(&sum_in(s, &cy)), &coeffs);
            prop_assert!(support_within(cat, &f.cokernel().0, s));
            prop_assert!(support_within(cat, &f.image().sub_to_rep().0, s));
        }
    }
}
