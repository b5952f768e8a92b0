//! Recovering exact child placements from dissection geometry.

use core::f64::consts::PI;

use num_rational::Ratio;

use crate::angle::{Angle, GeneratorRegistry, Orientation, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::tiling::Child;

/// Isometry `x -> R_angle(conj^reflect x) + t` carrying `proto` onto the
/// vertex set `target`, if one exists within `tol`.
pub fn fit_isometry(proto: &[Point], target: &[Point], tol: f64) -> Option<(bool, f64, Point)> {
    let n = proto.len();
    if target.len() != n {
        return None;
    }
    let e = geom::sub(proto[1], proto[0]);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let f = geom::sub(target[j], target[i]);
            if libm::fabs(geom::norm(f) - geom::norm(e)) > tol {
                continue;
            }
            for reflect in [false, true] {
                let e_r = if reflect { [e[0], -e[1]] } else { e };
                let ang = libm::atan2(f[1], f[0]) - libm::atan2(e_r[1], e_r[0]);
                let (c, s) = (libm::cos(ang), libm::sin(ang));
                let lin = |p: Point| {
                    let (x, y) = if reflect { (p[0], -p[1]) } else { (p[0], p[1]) };
                    [c * x - s * y, s * x + c * y]
                };
                let t = geom::sub(target[i], lin(proto[0]));
                let ok = proto.iter().all(|&v| {
                    let w = geom::add(lin(v), t);
                    target.iter().any(|&u| geom::dist(u, w) <= tol)
                });
                if ok {
                    return Some((reflect, geom::wrap_angle(ang), t));
                }
            }
        }
    }
    None
}

/// Writes `value` as `k * generator + q * pi / den` with `|k| <= max_k`.
pub fn identify_angle(
    value: f64,
    reg: &GeneratorRegistry,
    generator: Option<&str>,
    max_k: i32,
    den: i64,
) -> Result<Angle> {
    let (gen_value, gen_index) = match generator {
        Some(name) => {
            let i = reg.index_of(name)?;
            (reg.entries()[i].value, Some(i))
        }
        None => (0.0, None),
    };
    let ks = if gen_index.is_some() {
        -max_k..=max_k
    } else {
        0..=0
    };
    let mut best: Option<(f64, Angle)> = None;
    for k in ks {
        let rest = geom::wrap_angle(value - k as f64 * gen_value);
        let q = libm::round(rest / PI * den as f64);
        let err = libm::fabs(rest - q * PI / den as f64);
        if err < 1e-8 {
            let mut gens = [0i32; MAX_GENERATORS];
            if let Some(i) = gen_index {
                gens[i] = k;
            }
            let a = Angle::from_parts(Ratio::new(q as i64, den), gens, reg.tag());
            if best.as_ref().is_none_or(|(e, b)| {
                k.abs() < b.gens().iter().map(|g| g.abs()).sum::<i32>() || err < *e && k == 0
            }) {
                best = Some((err, a));
            }
        }
    }
    best.map(|(_, a)| a)
        .ok_or_else(|| Error::VerifyFailed(alloc::format!("angle {} has no symbolic form", value)))
}

/// The child of prototile type `j` occupying `target`, with its angle
/// written symbolically.
pub fn child_for(
    j: usize,
    proto: &[Point],
    target: &[Point],
    reg: &GeneratorRegistry,
    generator: Option<&str>,
    den: i64,
) -> Result<Child> {
    let (reflect, angle, t) = fit_isometry(proto, target, 1e-9)
        .ok_or_else(|| Error::VerifyFailed("child does not fit its slot".into()))?;
    let a = identify_angle(angle, reg, generator, 6, den)?;
    Ok(Child {
        prototile: j,
        orientation: Orientation::new(reflect, a),
        translation: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{Certificate, Generator};
    use alloc::vec;

    #[test]
    fn fits_rotations_and_reflections() {
        let proto = [[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]];
        let target = [[1.0, 1.0], [1.0, 3.0], [0.0, 1.0]];
        let (refl, ang, t) = fit_isometry(&proto, &target, 1e-12).unwrap();
        assert!(!refl);
        assert!((ang - PI / 2.0).abs() < 1e-12);
        assert!(geom::dist(t, [1.0, 1.0]) < 1e-12);
        let mirrored = [[0.0, 0.0], [2.0, 0.0], [0.0, -1.0]];
        let (refl, ang, _) = fit_isometry(&proto, &mirrored, 1e-12).unwrap();
        assert!(refl && ang.abs() < 1e-12);
        assert!(fit_isometry(&proto, &[[0.0, 0.0], [3.0, 0.0], [0.0, 1.0]], 1e-9).is_none());
    }

    #[test]
    fn symbolic_identification() {
        let g = libm::atan(0.5);
        let reg = GeneratorRegistry::new(vec![Generator {
            name: "g".into(),
            value: g,
            error: 1e-16,
            certificate: Certificate::Unverified,
        }])
        .unwrap();
        let a = identify_angle(geom::wrap_angle(-g + PI / 2.0), &reg, Some("g"), 4, 2).unwrap();
        assert_eq!(
            a,
            reg.angle("g", -1)
                .unwrap()
                .add(&Angle::pi_frac(1, 2))
                .unwrap()
        );
        let r = identify_angle(3.0 * PI / 2.0, &reg, Some("g"), 4, 2).unwrap();
        assert_eq!(r, Angle::pi_frac(3, 2));
        assert!(identify_angle(1.0, &reg, Some("g"), 4, 2).is_err());
    }
}
