use alloc::vec::Vec;

use super::{PlacedTile, SubstitutionRule};
use crate::geom::{self, BBox, Point};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Defects of `lambda T_i = union of children`, maximized over prototiles.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    /// Relative mismatch between total child area and `lambda^2 area(T_i)`.
    pub area_defect: f64,
    /// Largest distance of a child vertex outside `lambda T_i`.
    pub containment_defect: f64,
    /// Largest interpenetration depth between two children.
    pub overlap_defect: f64,
    pub pass: bool,
    /// Index of the prototile with the worst normalized defect.
    pub worst_prototile: usize,
}

pub fn verify_rule(rule: &SubstitutionRule, tol: f64) -> VerifyReport {
    let lambda = rule.factor_f64();
    let mut report = VerifyReport {
        area_defect: 0.0,
        containment_defect: 0.0,
        overlap_defect: 0.0,
        pass: true,
        worst_prototile: 0,
    };
    let mut worst = -1.0;
    for (i, proto) in rule.prototiles().iter().enumerate() {
        let target: Vec<Point> = proto
            .vertices()
            .iter()
            .map(|&v| geom::scale(v, lambda))
            .collect();
        let target_area = proto.area() * lambda * lambda;
        let scale = geom::BBox::of(&target).diameter().max(1.0);
        let polys: Vec<Vec<Point>> = rule
            .children(i)
            .iter()
            .map(|c| {
                rule.realize(&PlacedTile {
                    prototile: c.prototile,
                    orientation: c.orientation,
                    translation: c.translation,
                })
            })
            .collect();

        let total: f64 = polys.iter().map(|p| libm::fabs(geom::signed_area(p))).sum();
        let area = libm::fabs(total - target_area) / target_area;
        let contain = polys
            .iter()
            .flat_map(|p| p.iter())
            .map(|&v| geom::outside_distance(v, &target))
            .fold(0.0, f64::max);
        let overlap = max_overlap(&polys);

        report.area_defect = report.area_defect.max(area);
        report.containment_defect = report.containment_defect.max(contain);
        report.overlap_defect = report.overlap_defect.max(overlap);
        let ok = area <= tol && contain <= tol * scale && overlap <= tol * scale;
        report.pass &= ok;
        let normalized = (area / tol)
            .max(contain / (tol * scale))
            .max(overlap / (tol * scale));
        if normalized > worst {
            worst = normalized;
            report.worst_prototile = i;
        }
    }
    report
}

fn max_overlap(polys: &[Vec<Point>]) -> f64 {
    let tris: Vec<Vec<[Point; 3]>> = polys.iter().map(|p| ccw_triangles(p)).collect();
    let boxes: Vec<BBox> = polys.iter().map(|p| BBox::of(p)).collect();
    let mut worst: f64 = 0.0;
    for a in 0..polys.len() {
        for b in a + 1..polys.len() {
            let (ba, bb) = (&boxes[a], &boxes[b]);
            if ba.max[0] < bb.min[0]
                || bb.max[0] < ba.min[0]
                || ba.max[1] < bb.min[1]
                || bb.max[1] < ba.min[1]
            {
                continue;
            }
            for ta in &tris[a] {
                for tb in &tris[b] {
                    worst = worst.max(geom::penetration(ta, tb));
                }
            }
        }
    }
    worst
}

fn ccw_triangles(p: &[Point]) -> Vec<[Point; 3]> {
    if geom::signed_area(p) >= 0.0 {
        geom::triangulate(p)
    } else {
        let mut q = p.to_vec();
        q.reverse();
        geom::triangulate(&q)
    }
}
