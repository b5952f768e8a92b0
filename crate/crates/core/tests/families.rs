use pinwheel_core::analysis::SubstMatrix;
use pinwheel_core::angle::Certificate;
use pinwheel_core::families::{
    build_pinwheel, build_pythagoras, build_pythia, build_tipi, FamilySpec,
};
use pinwheel_core::tiling::{supertile, verify_rule, DEFAULT_TOL};
use pinwheel_core::Error;

const PYTH: [(u32, u32); 6] = [(3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 3)];
const TIPI: [(u32, u32); 4] = [(3, 1), (5, 1), (5, 2), (7, 3)];

#[test]
fn pythagoras_verifies_with_companion_matrix() {
    for (m, j) in PYTH {
        let r = build_pythagoras(m, j).unwrap();
        let v = verify_rule(&r, DEFAULT_TOL);
        assert!(v.pass, "({},{}) {:?}", m, j, v);
        assert_eq!(
            r.substitution_matrix(),
            SubstMatrix::companion(m as usize, j as usize),
            "({},{})",
            m,
            j
        );
        assert!(matches!(
            r.registry().entries()[0].certificate,
            Certificate::IrrationalPi(_)
        ));
    }
}

#[test]
fn pythagoras_three_one_legs() {
    let r = build_pythagoras(3, 1).unwrap();
    let v = r.prototiles()[0].vertices();
    let xs: Vec<f64> = v.iter().map(|p| p[0].abs()).collect();
    let ys: Vec<f64> = v.iter().map(|p| p[1].abs()).collect();
    let a = xs.iter().cloned().fold(0.0, f64::max);
    let b = ys.iter().cloned().fold(0.0, f64::max);
    // eta is the plastic number; a = eta^(-3/2), b = 1/eta
    assert!((a - 0.655865618097142).abs() < 1e-12, "{}", a);
    assert!((b - 0.754877666246693).abs() < 1e-12, "{}", b);
    assert!((a * a + b * b - 1.0).abs() < 1e-12);
}

#[test]
fn four_two_is_rejected() {
    assert!(matches!(
        build_pythagoras(4, 2),
        Err(Error::SpecViolation(_))
    ));
    assert!(matches!(build_pythia(4, 2), Err(Error::SpecViolation(_))));
    assert!(matches!(
        "pythagoras:4,2".parse::<FamilySpec>(),
        Err(Error::SpecViolation(_))
    ));
}

#[test]
fn pythia_three_one() {
    let r = build_pythia(3, 1).unwrap();
    assert_eq!(r.children(0).len(), 4);
    let m = r.substitution_matrix();
    assert_eq!(
        m,
        SubstMatrix::from_rows(&[vec![1, 1, 2], vec![2, 2, 3], vec![1, 2, 2]])
    );
    let f = r.factor_f64();
    assert!((f * f - 5.404313).abs() < 1e-5, "{}", f);
}

#[test]
fn pythia_flips_two_tiles() {
    for (m, j) in PYTH {
        let sigma = build_pythagoras(m, j).unwrap();
        let rho = build_pythia(m, j).unwrap();
        assert!(verify_rule(&rho, DEFAULT_TOL).pass, "({},{})", m, j);
        let p = supertile(&sigma, 0, 2 * m as usize).unwrap();
        let kids = rho.children(0);
        assert_eq!(p.len(), kids.len());
        let flips = p
            .tiles
            .iter()
            .zip(kids)
            .filter(|(a, b)| a.orientation.reflect != b.orientation.reflect)
            .count();
        assert_eq!(flips, 2, "({},{})", m, j);
        assert!(p
            .tiles
            .iter()
            .zip(kids)
            .all(|(a, b)| a.prototile == b.prototile));
    }
}

#[test]
fn tipi_verifies() {
    for (m, j) in TIPI {
        let r = build_tipi(m, j).unwrap();
        assert!(verify_rule(&r, DEFAULT_TOL).pass);
        let last = r.children(m as usize - 1);
        let mut types: Vec<usize> = last.iter().map(|c| c.prototile).collect();
        types.sort();
        assert_eq!(types, vec![0, j as usize, j as usize, 2 * j as usize]);
        assert_eq!(last.iter().filter(|c| c.orientation.reflect).count(), 1);
        assert_eq!(
            r.meta("convention"),
            Some("scale=sqrt(eta),rotation=e^(i theta)")
        );
    }
}

#[test]
fn pinwheel_basics() {
    let r = build_pinwheel().unwrap();
    let v = verify_rule(&r, DEFAULT_TOL);
    assert!(v.pass && v.area_defect < 1e-9);
    assert_eq!(r.children(0).len(), 5);
    for n in 0..5 {
        assert_eq!(supertile(&r, 0, n).unwrap().len(), 5usize.pow(n as u32));
    }
    assert!(matches!(
        r.registry().entries()[0].certificate,
        Certificate::IrrationalPi(_)
    ));
}
