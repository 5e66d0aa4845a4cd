//! Klein-set geometry: numeric roots of forms, stereographic projection onto
//! the unit sphere, Moebius transforms of linear changes, and recognition of
//! the classical configurations.
//!
//! Numeric only: this module is for inspection and recognition. The exact
//! modules never consult it.

use crate::exact::complex::complex_roots;
use crate::exact::{eval_complex, AlgebraicScalar, ArithError};
use crate::forms::{BinaryForm, FormSet, LinearChange};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectiveRoot {
    /// Root t/s of the factor s x - t y.
    Finite { re: f64, im: f64, err: f64 },
    Infinity,
}

impl ProjectiveRoot {
    pub fn finite(z: Complex64, err: f64) -> Self {
        ProjectiveRoot::Finite {
            re: z.re,
            im: z.im,
            err,
        }
    }
}

/// Unit 3-vector on the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl KleinPoint {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dist(&self, o: &KleinPoint) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        let dz = self.z - o.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum KleinError {
    #[error("zero form has no root set")]
    ZeroForm,
    #[error("singular linear change")]
    Singular,
    #[error("{0}")]
    Arith(#[from] ArithError),
}

/// Exact multiplicity split: strip y^s and x^r factors, then the squarefree
/// chain p, gcd(p, p'), gcd(gcd, gcd'), ... over the scalar field.
fn dehomogenize(f: &BinaryForm) -> (usize, usize, Vec<AlgebraicScalar>) {
    let coeffs = f.coeffs();
    let first = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
    // leading x^k..: zero prefix at index < first means y | f? coefficient i
    // multiplies x^{k-i} y^i, so a zero at i = 0 .. first-1 gives y-powers:
    // actually the coefficient of x^k is index 0; if it vanishes up to
    // `first`, then y^{first} divides f. Similarly trailing zeros give
    // x-powers.
    let inf_mult = first; // y^first | f, each y factor maps to infinity
    let x_mult = coeffs.len() - 1 - last; // x^{that} | f, roots at 0
    // dehomogenized polynomial in t for the middle part: coefficients of
    // t^j is the coefficient of x^{j} y^{deg - j} ... with f = sum a_i
    // x^{k-i} y^i, f(t, 1) = sum a_i t^{k-i}: constant term a_k.
    let mid: Vec<AlgebraicScalar> = (first..=last).rev().map(|i| coeffs[i].clone()).collect();
    (inf_mult, x_mult, mid)
}

fn poly_eval_complex(p: &[AlgebraicScalar], precision: u32) -> Vec<Complex64> {
    p.iter()
        .map(|c| {
            let v = eval_complex(c, precision);
            Complex64::new(v.re, v.im)
        })
        .collect()
}

/// Roots with multiplicity via the exact gcd chain: the roots of
/// gcd_k(p, p', .., p^{(k)}) have multiplicity > k.
pub fn roots_of_form(
    f: &BinaryForm,
    precision: u32,
) -> Result<Vec<(ProjectiveRoot, usize)>, KleinError> {
    if f.is_zero() {
        return Err(KleinError::ZeroForm);
    }
    let (inf_mult, x_mult, mid) = dehomogenize(f);
    let mut out: Vec<(ProjectiveRoot, usize)> = Vec::new();
    if inf_mult > 0 {
        out.push((ProjectiveRoot::Infinity, inf_mult));
    }
    if x_mult > 0 {
        out.push((
            ProjectiveRoot::Finite {
                re: 0.0,
                im: 0.0,
                err: 0.0,
            },
            x_mult,
        ));
    }
    // exact chain of gcds for multiplicity counting
    let mut chain: Vec<Vec<AlgebraicScalar>> = Vec::new();
    let mut cur = crate::poly::ParamPoly::new(mid.clone());
    loop {
        let Some(deg) = cur.degree() else { break };
        if deg == 0 {
            break;
        }
        chain.push(cur.coeffs().to_vec());
        match cur.gcd(&cur.derivative()) {
            Ok(g) if g.degree().map_or(false, |d| d >= 1) => cur = g,
            _ => break,
        }
    }
    // roots of the k-th chain element have multiplicity >= k+1; compute the
    // squarefree layer roots numerically and count how deep each persists
    if chain.is_empty() {
        return Ok(out);
    }
    let base = poly_eval_complex(&chain[0], precision);
    let mut roots = complex_roots(&base);
    // polish against the deepest layers by clustering
    let mut assigned: Vec<usize> = vec![1; roots.len()];
    for layer in chain.iter().skip(1) {
        let lr = complex_roots(&poly_eval_complex(layer, precision));
        for r in lr {
            // attach to the nearest base root
            if let Some((idx, _)) = roots
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - r).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            {
                assigned[idx] += 1;
            }
        }
    }
    // cluster near-identical base roots (relative 1e-10)
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut mult = assigned[i];
        for j in (i + 1)..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() < 1e-10 * (1.0 + roots[i].norm()) {
                used[j] = true;
                mult += assigned[j];
            }
        }
        out.push((ProjectiveRoot::finite(roots[i], 1e-12), mult));
        used[i] = true;
        let _ = mult;
    }
    let total: usize = out.iter().map(|(_, m)| m).sum();
    debug_assert_eq!(total, f.degree(), "root count with multiplicity");
    let _ = &mut roots;
    Ok(out)
}

/// Inverse stereographic projection: finite z maps to
/// (2 Re z, 2 Im z, |z|^2 - 1) / (|z|^2 + 1); infinity maps to (0, 0, 1).
pub fn to_sphere(root: &ProjectiveRoot) -> KleinPoint {
    match root {
        ProjectiveRoot::Infinity => KleinPoint {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        },
        ProjectiveRoot::Finite { re, im, .. } => {
            let n2 = re * re + im * im;
            let den = n2 + 1.0;
            KleinPoint {
                x: 2.0 * re / den,
                y: 2.0 * im / den,
                z: (n2 - 1.0) / den,
            }
        }
    }
}

/// The Klein set of a collection of forms: all roots, with multiplicity,
/// mapped to the sphere.
pub fn klein_set(forms: &[BinaryForm], precision: u32) -> Result<Vec<KleinPoint>, KleinError> {
    let mut out = Vec::new();
    for f in forms {
        for (root, mult) in roots_of_form(f, precision)? {
            let p = to_sphere(&root);
            for _ in 0..mult {
                out.push(p);
            }
        }
    }
    Ok(out)
}

pub fn klein_set_of(set: &FormSet, precision: u32) -> Result<Vec<KleinPoint>, KleinError> {
    klein_set(set.forms(), precision)
}

/// Moebius transform T(z) = (delta z - beta) / (-gamma z + alpha) induced on
/// roots by the change (x, y) -> (alpha x + beta y, gamma x + delta y).
#[derive(Debug, Clone, Copy)]
pub struct MobiusTransform {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusTransform {
    /// Apply to a projective root (Riemann-sphere arithmetic).
    pub fn apply(&self, root: &ProjectiveRoot) -> ProjectiveRoot {
        match root {
            ProjectiveRoot::Infinity => {
                // T(inf) = a / c in the homogeneous sense: [a : c]
                if self.c.norm() < 1e-14 {
                    ProjectiveRoot::Infinity
                } else {
                    ProjectiveRoot::finite(self.a / self.c, 1e-12)
                }
            }
            ProjectiveRoot::Finite { re, im, .. } => {
                let z = Complex64::new(*re, *im);
                let den = self.c * z + self.d;
                let num = self.a * z + self.b;
                if den.norm() < 1e-12 * (1.0 + num.norm()) {
                    ProjectiveRoot::Infinity
                } else {
                    ProjectiveRoot::finite(num / den, 1e-11)
                }
            }
        }
    }
}

/// T(z) = (delta z - beta) / (-gamma z + alpha) for
/// M: (x, y) -> (alpha x + beta y, gamma x + delta y).
pub fn mobius_of_change(m: &LinearChange, precision: u32) -> Result<MobiusTransform, KleinError> {
    if !m.is_invertible() {
        return Err(KleinError::Singular);
    }
    let ev = |s: &AlgebraicScalar| {
        let v = eval_complex(s, precision);
        Complex64::new(v.re, v.im)
    };
    Ok(MobiusTransform {
        a: ev(&m.d),
        b: -ev(&m.b),
        c: -ev(&m.c),
        d: ev(&m.a),
    })
}

// ---- configuration recognition ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Octahedron,
    Cube,
    Icosahedron,
    /// Two parallel regular m-gons (one ring when degenerate at the
    /// equator), plus the poles when present.
    PrismWithPoles { gon: usize },
    Unknown,
}

impl Recognition {
    pub fn label(&self) -> String {
        match self {
            Recognition::Octahedron => "octahedron".into(),
            Recognition::Cube => "cube".into(),
            Recognition::Icosahedron => "icosahedron".into(),
            Recognition::PrismWithPoles { gon } => format!("{}-gon-prism-with-poles", gon),
            Recognition::Unknown => "unknown".into(),
        }
    }
}

fn reference_octahedron() -> Vec<KleinPoint> {
    let mut v = Vec::new();
    for s in [1.0f64, -1.0] {
        v.push(KleinPoint { x: s, y: 0.0, z: 0.0 });
        v.push(KleinPoint { x: 0.0, y: s, z: 0.0 });
        v.push(KleinPoint { x: 0.0, y: 0.0, z: s });
    }
    v
}

fn reference_cube() -> Vec<KleinPoint> {
    let s = 1.0 / 3.0f64.sqrt();
    let mut v = Vec::new();
    for a in [s, -s] {
        for b in [s, -s] {
            for c in [s, -s] {
                v.push(KleinPoint { x: a, y: b, z: c });
            }
        }
    }
    v
}

fn reference_icosahedron() -> Vec<KleinPoint> {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let n = (1.0 + phi * phi).sqrt();
    let mut v = Vec::new();
    for a in [1.0f64, -1.0] {
        for b in [phi, -phi] {
            v.push(KleinPoint { x: 0.0, y: a / n, z: b / n });
            v.push(KleinPoint { x: a / n, y: b / n, z: 0.0 });
            v.push(KleinPoint { x: b / n, y: 0.0, z: a / n });
        }
    }
    v
}

fn distance_multiset(points: &[KleinPoint]) -> Vec<f64> {
    let mut d = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            d.push(points[i].dist(&points[j]));
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

fn multisets_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn cross(a: &KleinPoint, b: &KleinPoint) -> KleinPoint {
    KleinPoint {
        x: a.y * b.z - a.z * b.y,
        y: a.z * b.x - a.x * b.z,
        z: a.x * b.y - a.y * b.x,
    }
}

fn dot(a: &KleinPoint, b: &KleinPoint) -> f64 {
    a.x * b.x + a.y * b.y + a.z * b.z
}

/// Fit the rotation mapping reference points onto the observed ones, via a
/// backtracking correspondence on distance profiles, then verify every point.
fn rotation_match(obs: &[KleinPoint], reference: &[KleinPoint], tol: f64) -> bool {
    let n = obs.len();
    if reference.len() != n || n < 3 {
        return false;
    }
    // choose a non-degenerate reference pair (r0, r1)
    let r0 = reference[0];
    let Some(i1) = reference
        .iter()
        .position(|p| cross(&r0, p).norm() > 0.3)
    else {
        return false;
    };
    let r1 = reference[i1];
    let frame = |u: &KleinPoint, v: &KleinPoint| -> [KleinPoint; 3] {
        let e1 = *u;
        let c = cross(u, v);
        let cn = c.norm();
        let e3 = KleinPoint { x: c.x / cn, y: c.y / cn, z: c.z / cn };
        let e2 = cross(&e3, &e1);
        [e1, e2, e3]
    };
    let fr = frame(&r0, &r1);
    let d01 = r0.dist(&r1);
    for (a, pa) in obs.iter().enumerate() {
        for (b, pb) in obs.iter().enumerate() {
            if a == b || (pa.dist(pb) - d01).abs() > tol * 4.0 {
                continue;
            }
            if cross(pa, pb).norm() < 0.2 {
                continue;
            }
            let fo = frame(pa, pb);
            // rotation R = fo * fr^T maps r0 -> pa, r1 -> approx pb
            let rot = |p: &KleinPoint| -> KleinPoint {
                let coords = [dot(&fr[0], p), dot(&fr[1], p), dot(&fr[2], p)];
                KleinPoint {
                    x: coords[0] * fo[0].x + coords[1] * fo[1].x + coords[2] * fo[2].x,
                    y: coords[0] * fo[0].y + coords[1] * fo[1].y + coords[2] * fo[2].y,
                    z: coords[0] * fo[0].z + coords[1] * fo[1].z + coords[2] * fo[2].z,
                }
            };
            // verify: every rotated reference point is near some observation
            let mut taken = vec![false; n];
            let mut ok = true;
            for r in reference {
                let q = rot(r);
                match obs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !taken[*i])
                    .map(|(i, p)| (i, p.dist(&q)))
                    .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
                {
                    Some((i, dist)) if dist <= tol * 8.0 => taken[i] = true,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return true;
            }
        }
    }
    false
}

/// Group points into latitude rings and poles.
fn prism_structure(points: &[KleinPoint], tol: f64) -> Option<usize> {
    let mut poles = 0usize;
    let mut rest: Vec<KleinPoint> = Vec::new();
    for p in points {
        if (p.z.abs() - 1.0).abs() <= tol && p.x.abs() <= tol && p.y.abs() <= tol {
            poles += 1;
        } else {
            rest.push(*p);
        }
    }
    if poles == 0 || rest.len() < 3 {
        return None;
    }
    // cluster latitudes
    let mut lats: Vec<(f64, Vec<KleinPoint>)> = Vec::new();
    'outer: for p in &rest {
        for (z, ring) in lats.iter_mut() {
            if (p.z - *z).abs() <= tol * 10.0 {
                ring.push(*p);
                continue 'outer;
            }
        }
        lats.push((p.z, vec![*p]));
    }
    // all rings must be regular polygons of a common size (or one ring)
    let ring_regular = |ring: &[KleinPoint]| -> bool {
        let m = ring.len();
        if m < 2 {
            return false;
        }
        let mut angs: Vec<f64> = ring.iter().map(|p| p.y.atan2(p.x)).collect();
        angs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let step = 2.0 * std::f64::consts::PI / m as f64;
        for w in 0..m {
            let next = if w + 1 == m {
                angs[0] + 2.0 * std::f64::consts::PI
            } else {
                angs[w + 1]
            };
            if ((next - angs[w]) - step).abs() > 1e-6 {
                return false;
            }
        }
        true
    };
    match lats.len() {
        1 => {
            let ring = &lats[0].1;
            if ring_regular(ring) {
                Some(ring.len())
            } else {
                None
            }
        }
        2 => {
            let (z1, r1) = &lats[0];
            let (z2, r2) = &lats[1];
            if r1.len() == r2.len()
                && (z1 + z2).abs() <= tol * 20.0
                && ring_regular(r1)
                && ring_regular(r2)
            {
                Some(r1.len())
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Recognize a point configuration up to rotation, or return Unknown.
pub fn recognize(points: &[KleinPoint], tol: f64) -> Recognition {
    if points.len() < 4 || points.len() > 30 {
        return Recognition::Unknown;
    }
    let dm = distance_multiset(points);
    for (reference, label) in [
        (reference_octahedron(), Recognition::Octahedron),
        (reference_cube(), Recognition::Cube),
        (reference_icosahedron(), Recognition::Icosahedron),
    ] {
        if points.len() == reference.len()
            && multisets_match(&dm, &distance_multiset(&reference), tol)
            && rotation_match(points, &reference, tol)
        {
            return label;
        }
    }
    if let Some(gon) = prism_structure(points, tol.max(1e-9)) {
        return Recognition::PrismWithPoles { gon };
    }
    Recognition::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog;
    use crate::exact::parse_scalar;
    use crate::forms::GenForm;

    fn form(coeffs: &[&str]) -> BinaryForm {
        GenForm::new(coeffs.iter().map(|s| parse_scalar(s).unwrap()).collect())
    }

    #[test]
    fn simple_roots() {
        let r = roots_of_form(&form(&["1", "0", "-1"]), 53).unwrap();
        assert_eq!(r.len(), 2);
        let r = roots_of_form(&form(&["0", "2", "0"]), 53).unwrap();
        assert!(r.iter().any(|(p, _)| matches!(p, ProjectiveRoot::Infinity)));
        assert!(r.iter().any(|(p, _)| matches!(
            p,
            ProjectiveRoot::Finite { re, im, .. } if re.abs() < 1e-12 && im.abs() < 1e-12
        )));
        let r = roots_of_form(&form(&["1", "0", "1"]), 53).unwrap();
        for (p, _) in &r {
            match p {
                ProjectiveRoot::Finite { re, im, .. } => {
                    assert!(re.abs() < 1e-12 && (im.abs() - 1.0).abs() < 1e-12);
                }
                _ => panic!("unexpected infinity"),
            }
        }
    }

    #[test]
    fn multiplicity_of_monomial() {
        // (xy)^3 as a single sextic form: 0 and infinity with multiplicity 3
        let f = form(&["0", "1", "0"]).pow(3);
        let r = roots_of_form(&f, 53).unwrap();
        let mut inf = 0;
        let mut zero = 0;
        for (p, m) in r {
            match p {
                ProjectiveRoot::Infinity => inf += m,
                ProjectiveRoot::Finite { re, im, .. } => {
                    assert!(re.abs() < 1e-9 && im.abs() < 1e-9);
                    zero += m;
                }
            }
        }
        assert_eq!((inf, zero), (3, 3));
    }

    #[test]
    fn pythagorean_octahedron() {
        let e = catalog("pythagorean").unwrap();
        let pts = klein_set(
            &e.identity
                .terms()
                .iter()
                .map(|t| t.form.clone())
                .collect::<Vec<_>>(),
            53,
        )
        .unwrap();
        assert_eq!(pts.len(), 6);
        for p in &pts {
            assert!((p.norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(recognize(&pts, 1e-9), Recognition::Octahedron);
    }

    #[test]
    fn quintic_cube() {
        let e = catalog("elkies-quintic").unwrap();
        let pts = klein_set(
            &e.identity
                .terms()
                .iter()
                .map(|t| t.form.clone())
                .collect::<Vec<_>>(),
            53,
        )
        .unwrap();
        assert_eq!(pts.len(), 8);
        assert_eq!(recognize(&pts, 1e-9), Recognition::Cube);
        // the advertised vertices: (+-sqrt(2/3), 0, +-1/sqrt(3)) and
        // (0, +-sqrt(2/3), +-1/sqrt(3))
        let a = (2.0f64 / 3.0).sqrt();
        let c = 1.0 / 3.0f64.sqrt();
        for p in &pts {
            let on_x = (p.x.abs() - a).abs() < 1e-9 && p.y.abs() < 1e-9;
            let on_y = (p.y.abs() - a).abs() < 1e-9 && p.x.abs() < 1e-9;
            assert!(on_x || on_y, "vertex {:?}", p);
            assert!((p.z.abs() - c).abs() < 1e-9);
        }
    }

    #[test]
    fn quartic18_hexagon_with_poles() {
        let e = catalog("quartic18").unwrap();
        let pts = klein_set(
            &e.identity
                .terms()
                .iter()
                .map(|t| t.form.clone())
                .collect::<Vec<_>>(),
            53,
        )
        .unwrap();
        assert_eq!(pts.len(), 8);
        assert_eq!(
            recognize(&pts, 1e-9),
            Recognition::PrismWithPoles { gon: 6 }
        );
    }

    #[test]
    fn icosa14_recognized() {
        let e = catalog("icosa14").unwrap();
        let pts = klein_set(
            &e.identity
                .terms()
                .iter()
                .map(|t| t.form.clone())
                .collect::<Vec<_>>(),
            53,
        )
        .unwrap();
        assert_eq!(pts.len(), 12);
        assert_eq!(recognize(&pts, 1e-6), Recognition::Icosahedron);
        // two pentagon rings at z = +-1/sqrt(5), plus both poles
        let lat = 1.0 / 5.0f64.sqrt();
        let mut poles = 0;
        for p in &pts {
            if p.z.abs() > 0.99 {
                poles += 1;
            } else {
                assert!((p.z.abs() - lat).abs() < 1e-9, "latitude {:?}", p);
            }
        }
        assert_eq!(poles, 2);
    }

    #[test]
    fn quintic_synch_rotated_cube() {
        // Klein set: antipodal equilateral triangles at z = +-1/3 plus poles
        // under the catalog entry's form list -- a rotated cube.
        let e = catalog("quintic-synch").unwrap();
        let pts = klein_set(
            &e.identity
                .terms()
                .iter()
                .map(|t| t.form.clone())
                .collect::<Vec<_>>(),
            53,
        )
        .unwrap();
        assert_eq!(pts.len(), 8);
        assert_eq!(recognize(&pts, 1e-6), Recognition::Cube);
        let mut off_poles = 0;
        for p in &pts {
            if p.z.abs() < 0.99 {
                assert!((p.z.abs() - 1.0 / 3.0).abs() < 1e-9);
                off_poles += 1;
            }
        }
        assert_eq!(off_poles, 6);
    }

    #[test]
    fn mobius_consistency() {
        let f = form(&["2", "1", "-3"]);
        let m = LinearChange::new(
            parse_scalar("1").unwrap(),
            parse_scalar("i").unwrap(),
            parse_scalar("2").unwrap(),
            parse_scalar("-1").unwrap(),
        );
        let t = mobius_of_change(&m, 53).unwrap();
        let composed = f.compose(&m);
        let expect: Vec<ProjectiveRoot> = roots_of_form(&f, 53)
            .unwrap()
            .into_iter()
            .map(|(r, _)| t.apply(&r))
            .collect();
        let got = roots_of_form(&composed, 53).unwrap();
        for e in &expect {
            let hit = got.iter().any(|(g, _)| match (e, g) {
                (ProjectiveRoot::Infinity, ProjectiveRoot::Infinity) => true,
                (
                    ProjectiveRoot::Finite { re: a, im: b, .. },
                    ProjectiveRoot::Finite { re: c, im: d, .. },
                ) => ((a - c).powi(2) + (b - d).powi(2)).sqrt() < 1e-8,
                _ => false,
            });
            assert!(hit, "missing image root {:?} in {:?}", e, got);
        }
    }

    #[test]
    fn mobius_scaling() {
        // (x, y) -> (x, c y) sends the root z to c z
        let m = LinearChange::new(
            parse_scalar("1").unwrap(),
            parse_scalar("0").unwrap(),
            parse_scalar("0").unwrap(),
            parse_scalar("3").unwrap(),
        );
        let t = mobius_of_change(&m, 53).unwrap();
        let r = t.apply(&ProjectiveRoot::Finite {
            re: 2.0,
            im: 0.0,
            err: 0.0,
        });
        match r {
            ProjectiveRoot::Finite { re, im, .. } => {
                assert!((re - 6.0).abs() < 1e-12 && im.abs() < 1e-12);
            }
            _ => panic!("expected finite image"),
        }
    }

    #[test]
    fn random_points_unknown() {
        let pts: Vec<KleinPoint> = (0..12)
            .map(|i| {
                let a = 0.37 + 0.61 * i as f64;
                let b = 1.13 * i as f64;
                KleinPoint {
                    x: a.sin() * b.cos(),
                    y: a.sin() * b.sin(),
                    z: a.cos(),
                }
            })
            .collect();
        assert_eq!(recognize(&pts, 1e-9), Recognition::Unknown);
    }
}
