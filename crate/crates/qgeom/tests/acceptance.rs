//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so that the report is always printed;
//! the process fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command as Process;
use std::sync::Arc;
use std::time::Instant;

use qgeom_core::cyl::{
    distance, gauge_transform_holonomy, gauge_transformed, holonomy, inner_product, mc_inner_product, monomial_basis,
    promote, spin_network_states, Connection, CylFun, EdgeLabel, GaugeTransformation,
};
use qgeom_core::graph::{orientation_factor, subdivide, Edge, EmbeddedGraph, Point, RefinementMap, Surface};
use qgeom_core::linalg::{commutator, embed_product, hermitian_defect, hermitian_eigen, norm, zeros, CMatrix};
use qgeom_core::operators::{
    area_eigenvalue, area_formula_spectrum, area_matrix, area_spectrum, area_vertex_matrix, flux_apply,
    flux_commutator, flux_commutator_closed_form, volume_spectrum, volume_vertex_operator, FluxSpec, Region,
};
use qgeom_core::su2::{Axis, GroupElement, HalfInt, LieVector, Side};
use qgeom_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn pt(x: f64, y: f64, z: f64) -> Point {
    Point::new(x, y, z)
}

fn h(t: i32) -> HalfInt {
    HalfInt::from_twice(t)
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn theta() -> Arc<EmbeddedGraph> {
    let vertices = vec![pt(0., 0., 0.), pt(2., 0., 0.)];
    let edges = vec![
        Edge { start: 0, end: 1, polyline: vec![pt(0., 0., 0.), pt(1., 1., 0.3), pt(2., 0., 0.)] },
        Edge { start: 0, end: 1, polyline: vec![pt(0., 0., 0.), pt(2., 0., 0.)] },
        Edge { start: 1, end: 0, polyline: vec![pt(2., 0., 0.), pt(1., -1., 0.5), pt(0., 0., 0.)] },
    ];
    Arc::new(EmbeddedGraph::new(vertices, edges).unwrap())
}

/// Two loops at the origin leaving along `t[0]`, `t[2]` and returning
/// along `-t[1]`, `-t[3]`.
fn two_loops(t: [Point; 4]) -> Arc<EmbeddedGraph> {
    let o = Point::zeros();
    let edges = vec![
        Edge { start: 0, end: 0, polyline: vec![o, t[0], t[1], o] },
        Edge { start: 0, end: 0, polyline: vec![o, t[2], t[3], o] },
    ];
    Arc::new(EmbeddedGraph::new(vec![o], edges).unwrap())
}

const GENERIC: [[f64; 3]; 4] = [[1., 0.1, 0.2], [0.1, 1., -0.3], [-0.8, -0.3, 0.9], [-0.2, -0.9, -0.7]];

fn generic_loops() -> Arc<EmbeddedGraph> {
    two_loops(GENERIC.map(Point::from))
}

fn planar_loops() -> Arc<EmbeddedGraph> {
    two_loops([pt(1., 0.2, 0.), pt(0.2, 1., 0.), pt(-1., -0.2, 0.), pt(-0.2, -1., 0.)])
}

fn disc(normal: Point) -> Surface {
    Surface::regular_polygon(Point::zeros(), normal, 0.3, 8).unwrap()
}

fn random_label(rng: &mut ChaCha8Rng, twice: std::ops::RangeInclusive<i32>) -> EdgeLabel {
    let j = h(rng.random_range(twice));
    EdgeLabel::new(j, j.magnetic_at(rng.random_range(0..j.dim())), j.magnetic_at(rng.random_range(0..j.dim()))).unwrap()
}

fn random_function(g: &Arc<EmbeddedGraph>, rng: &mut ChaCha8Rng, twice: std::ops::RangeInclusive<i32>) -> CylFun {
    let mut f = CylFun::zero(g);
    for _ in 0..rng.random_range(1..=4) {
        let labels = (0..g.num_edges()).map(|_| random_label(rng, twice.clone())).collect();
        f.add_term(labels, C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).unwrap();
    }
    f
}

/// Standard spin matrices `J_x, J_y, J_z` in the basis `m = j, …, -j`.
fn spin_matrices(j: HalfInt) -> [CMatrix; 3] {
    let d = j.dim();
    let jj = j.as_f64();
    let m = |k: usize| jj - k as f64;
    let mut plus = zeros(d, d);
    for k in 1..d {
        // J₊|m⟩ = √(j(j+1) − m(m+1)) |m+1⟩
        plus[(k - 1, k)] = re((jj * (jj + 1.0) - m(k) * (m(k) + 1.0)).sqrt());
    }
    let minus = plus.adjoint();
    let jx = (&plus + &minus) * re(0.5);
    let jy = (&plus - &minus) * C64::new(0.0, -0.5);
    let jz = CMatrix::from_fn(d, d, |r, c| if r == c { re(m(r)) } else { re(0.0) });
    [jx, jy, jz]
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = theta();
    let basis = monomial_basis(&g, h(3));
    let n = basis.len();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            let want = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((inner_product(&basis[r], &basis[c]).unwrap() - want).norm());
        }
    }
    let gram_secs = start.elapsed().as_secs_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut max_z = 0.0f64;
    for k in 0..20 {
        let a = rng.random_range(0..n);
        // a quarter of the pairs are diagonal, so unit norms are sampled too
        let b = if k % 4 == 0 { a } else { rng.random_range(0..n) };
        let exact = inner_product(&basis[a], &basis[b]).unwrap();
        let est = mc_inner_product(&basis[a], &basis[b], 1_000_000, &mut rng).unwrap();
        max_z = max_z.max((est.value - exact).norm() / est.std_error);
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst == 0.0 && max_z <= 3.0 && secs < 60.0,
        format!(
            "{n} monomials, Gram deviation {worst:e} ({gram_secs:.1} s); 20 MC pairs at 1e6 samples, worst {max_z:.2} standard errors; {secs:.1} s total"
        ),
    )
}

/// `k` random subdivisions of `g`.
fn random_refinement(g: &Arc<EmbeddedGraph>, k: usize, rng: &mut ChaCha8Rng) -> RefinementMap {
    let mut map = RefinementMap::identity(g);
    for _ in 0..k {
        let fine = map.fine.clone();
        let e = rng.random_range(0..fine.num_edges());
        let poly = &fine.edge(e).polyline;
        let s = rng.random_range(0..poly.len() - 1);
        let p = poly[s] + (poly[s + 1] - poly[s]) * rng.random_range(0.1..0.9);
        map = map.then(&subdivide(&fine, e, p).unwrap());
    }
    map
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let graphs = [theta(), generic_loops()];
    let mut worst = 0.0f64;
    for i in 0..50 {
        let g = &graphs[i % 2];
        let f1 = random_function(g, &mut rng, 0..=3);
        let f2 = random_function(g, &mut rng, 0..=3);
        let before = inner_product(&f1, &f2).unwrap();
        let r1 = random_refinement(g, rng.random_range(1..=3), &mut rng);
        let r2 = random_refinement(g, rng.random_range(1..=3), &mut rng);
        let (p1, p2) = (promote(&f1, &r1).unwrap(), promote(&f2, &r1).unwrap());
        worst = worst.max((inner_product(&p1, &p2).unwrap() - before).norm());
        // differently refined arguments meet on a common refinement
        let q2 = promote(&f2, &r2).unwrap();
        worst = worst.max((inner_product(&p1, &q2).unwrap() - before).norm());
        worst = worst.max((inner_product(&f1, &q2).unwrap() - before).norm());
    }
    check(worst <= 1e-12, format!("50 pairs, worst inner-product change {worst:e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v = |s: f64, rng: &mut ChaCha8Rng| -> [f64; 3] { std::array::from_fn(|_| rng.random_range(-s..s)) };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let constant = std::array::from_fn(|_| v(1.0, &mut rng));
        let linear = std::array::from_fn(|_| std::array::from_fn(|_| v(0.5, &mut rng)));
        let a = Connection::affine(constant, linear);
        let path = |rng: &mut ChaCha8Rng, from: Point| -> Vec<Point> {
            let mut p = vec![from];
            for _ in 0..rng.random_range(1..=3) {
                let last = p[p.len() - 1];
                p.push(last + Point::from(std::array::from_fn::<f64, 3, _>(|_| rng.random_range(-1.0..1.0))));
            }
            p
        };
        let from = Point::from(v(1.0, &mut rng));
        let p = path(&mut rng, from);
        let q = path(&mut rng, p[p.len() - 1]);
        let hp = holonomy(&a, &p).unwrap();
        let hq = holonomy(&a, &q).unwrap();
        let mut pq = p.clone();
        pq.extend_from_slice(&q[1..]);
        worst = worst.max(holonomy(&a, &pq).unwrap().distance(&(hq * hp)));
        let back: Vec<Point> = p.iter().rev().copied().collect();
        worst = worst.max(holonomy(&a, &back).unwrap().distance(&hp.inverse()));
        let (w0, w1) = (v(1.0, &mut rng), v(1.0, &mut rng));
        let g = GaugeTransformation::new(move |x: &Point| {
            LieVector::new(w0[0] + w1[0] * x[1], w0[1] + w1[1] * x[2] * x[0], w0[2] + w1[2] * x[0].sin()).exp()
        });
        let moved = holonomy(&gauge_transformed(&a, &g), &p).unwrap();
        worst = worst.max(moved.distance(&gauge_transform_holonomy(&hp, &g.at(&p[0]), &g.at(&p[p.len() - 1]))));
    }
    // A = κ τ₃ dx along a straight path of length L: exp(−κLτ₃) = diag(e^{iκL/2}, e^{−iκL/2})
    let mut closed = 0.0f64;
    for _ in 0..20 {
        let kappa = rng.random_range(-3.0..3.0);
        let len = rng.random_range(0.1..4.0);
        let x0 = pt(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0);
        let path = vec![x0, x0 + pt(len / 3.0, 0., 0.), x0 + pt(len, 0., 0.)];
        let got = holonomy(&qgeom_core::cyl::constant_along(kappa, Axis::Z, 0), &path).unwrap();
        let want = GroupElement::from_cayley_klein(C64::from_polar(1.0, kappa * len / 2.0), re(0.0));
        closed = closed.max(got.distance(&want));
    }
    check(
        worst <= 1e-8 && closed <= 1e-10,
        format!("100 smooth fixtures, worst identity defect {worst:e}; constant closed form defect {closed:e}"),
    )
}

fn criterion_4() -> Outcome {
    // single j = 1/2 crossing of a gauge-invariant loop
    let poly = vec![pt(0., 0., -1.), pt(0., 0., 1.), pt(2., 0., 1.), pt(2., 0., -1.), pt(0., 0., -1.)];
    let g = Arc::new(EmbeddedGraph::new(vec![poly[0]], vec![Edge { start: 0, end: 0, polyline: poly }]).unwrap());
    let patch = Surface::square_z([-0.5, 0.5], [-0.5, 0.5], 0.0, true).unwrap();
    let spec = area_spectrum(&g, &patch, HalfInt::HALF, true).unwrap();
    let pi = std::f64::consts::PI;
    let physical: Vec<f64> = spec.values().iter().map(|v| v * 4.0 * pi).collect();
    let want = 8.0 * pi * (0.5f64 * 1.5).sqrt();
    let rel = if physical.len() == 1 { (physical[0] - want).abs() / want } else { f64::INFINITY };
    // general formula at j_u = j_d = j, j_{u+d} = 0 against 4 j(j+1)
    let mut reduces = true;
    for t in 0..=10 {
        let j = h(t);
        // 4 j(j+1) = t(t+2) for t = 2j
        let r = area_eigenvalue(j, j, HalfInt::ZERO);
        reduces &= *r.numer() == i64::from(t * (t + 2)) * *r.denom();
    }
    // dense (J_u − J_d)² from independently built spin matrices
    let mut worst = 0.0f64;
    for tu in 0..=4 {
        for td in 0..=4 {
            let (ju, jd) = (h(tu), h(td));
            let dims = [ju.dim(), jd.dim()];
            let (a, b) = (spin_matrices(ju), spin_matrices(jd));
            let mut dense = zeros(dims[0] * dims[1], dims[0] * dims[1]);
            for i in 0..3 {
                let t = embed_product(&[(0, &a[i])], &dims) - embed_product(&[(1, &b[i])], &dims);
                dense += &t * &t;
            }
            let mut formula = Vec::new();
            let mut jt = (tu - td).abs();
            while jt <= tu + td {
                let (u, d, t) = (f64::from(tu) / 2.0, f64::from(td) / 2.0, f64::from(jt) / 2.0);
                let value = 2.0 * u * (u + 1.0) + 2.0 * d * (d + 1.0) - t * (t + 1.0);
                formula.extend(std::iter::repeat_n(value, jt as usize + 1));
                jt += 2;
            }
            let formula = sorted(formula);
            let mut library = Vec::new();
            for (v, m) in area_formula_spectrum(&[ju], &[jd]) {
                library.extend(std::iter::repeat_n(*v.numer() as f64 / *v.denom() as f64, m));
            }
            let operator = hermitian_eigen(&area_vertex_matrix(&[(ju, Side::Left, 1), (jd, Side::Right, -1)])).values;
            for list in [hermitian_eigen(&dense).values, library, operator] {
                if list.len() != formula.len() {
                    return Err(format!("dimension mismatch at j_u = {ju}, j_d = {jd}"));
                }
                for (x, y) in list.iter().zip(&formula) {
                    worst = worst.max((x - y).abs());
                }
            }
        }
    }
    check(
        rel <= 1e-12 && reduces && worst <= 1e-10,
        format!(
            "single crossing {:.12} vs 4π√3 (relative {rel:e}); two-valent reduction for j ≤ 5: {reduces}; dense vs formula for j ≤ 2: {worst:e}",
            physical.first().copied().unwrap_or(f64::NAN)
        ),
    )
}

/// Volume eigenvalues at a vertex of two loops with spin-1/2 edges, from
/// the tangents alone.
fn brute_force_volume(t: [[f64; 3]; 4]) -> Vec<f64> {
    // every slot carries the defining representation; the conjugate one
    // used at edge ends is unitarily equivalent, so the spectrum is the same
    let tangents = [t[0], t[1], t[2], t[3]].map(Point::from);
    let pauli = spin_matrices(HalfInt::HALF);
    let dims = [2; 4];
    let gens: Vec<Vec<CMatrix>> =
        (0..4).map(|s| (0..3).map(|i| embed_product(&[(s, &pauli[i])], &dims)).collect()).collect();
    let mut casimir = zeros(16, 16);
    for i in 0..3 {
        let total: CMatrix = gens.iter().fold(zeros(16, 16), |acc, g| acc + &g[i]);
        casimir += &total * &total;
    }
    let eig = hermitian_eigen(&casimir);
    let cols: Vec<usize> = (0..16).filter(|&k| eig.values[k].abs() < 1e-9).collect();
    let invariant = CMatrix::from_fn(16, cols.len(), |r, c| eig.vectors[(r, cols[c])]);
    let eps =
        |i: usize, j: usize, k: usize| ((i as i32 - j as i32) * (j as i32 - k as i32) * (k as i32 - i as i32)).signum();
    let mut q = zeros(16, 16);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || b == c || a == c {
                    continue;
                }
                let det = tangents[a].dot(&tangents[b].cross(&tangents[c])).signum();
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            let e = eps(i, j, k);
                            if e != 0 {
                                q += &gens[a][i] * &gens[b][j] * &gens[c][k] * re(f64::from(e) * det);
                            }
                        }
                    }
                }
            }
        }
    }
    hermitian_eigen(&(invariant.adjoint() * q * &invariant)).values
}

fn criterion_5() -> Outcome {
    let theta_spec = volume_spectrum(&theta(), &Region::All, h(2), 1.0, true).unwrap();
    let planar_spec = volume_spectrum(&planar_loops(), &Region::All, h(2), 1.0, true).unwrap();
    let g = generic_loops();
    let op = volume_vertex_operator(&g, 0, &[h(1), h(1)], true).unwrap();
    let ev = op.eigenvalues();
    // the outgoing tangent at a loop's end points to its last interior point
    let oracle = sorted(brute_force_volume([GENERIC[0], GENERIC[1], GENERIC[2], GENERIC[3]]));
    let mut slots_agree = true;
    let hes = g.half_edges_at(0);
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        slots_agree &= orientation_factor(&g, 0, [hes[a], hes[b], hes[c]]).unwrap() != 0;
    }
    let matches = ev.len() == 2 && oracle.len() == 2 && ev.iter().zip(&oracle).all(|(x, y)| (x - y).abs() <= 1e-10);
    let positive = volume_spectrum(&g, &Region::All, HalfInt::HALF, 1.0, true).unwrap().values();
    check(
        theta_spec.values() == vec![0.0]
            && planar_spec.values() == vec![0.0]
            && op.matrix.shape() == (2, 2)
            && hermitian_defect(&op.matrix) == 0.0
            && op.matrix.trace().norm() < 1e-12
            && slots_agree
            && matches
            && positive.len() == 1
            && positive[0] > 0.0,
        format!(
            "trivalent {:?}, planar {:?}; generic 4-valent q eigenvalues {ev:?} vs brute force {oracle:?}, volume {positive:?}",
            theta_spec.values(),
            planar_spec.values()
        ),
    )
}

fn random_direction(rng: &mut ChaCha8Rng) -> Point {
    loop {
        let p = Point::from(std::array::from_fn::<f64, 3, _>(|_| rng.random_range(-1.0..1.0)));
        if p.norm() > 0.3 && p.norm() <= 1.0 {
            return p.normalize();
        }
    }
}

fn affine_smearing(rng: &mut ChaCha8Rng) -> impl Fn(&Point) -> LieVector + Send + Sync + 'static {
    let a: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let b: [[f64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
    move |p: &Point| LieVector(std::array::from_fn(|i| a[i] + (0..3).map(|k| b[i][k] * p[k]).sum::<f64>()))
}

fn criterion_6() -> Outcome {
    // Jacobi identity for three flux derivations on a Wilson-loop state
    let g = generic_loops();
    let s = disc(pt(0., 0., 1.));
    let t = disc(pt(1., 0.2, 0.));
    let fs = [
        FluxSpec::constant(s.clone(), LieVector([1., 0., 0.])),
        FluxSpec::constant(s, LieVector([0., 1., 0.5])),
        FluxSpec::constant(t, LieVector([0.2, 0.3, 1.])),
    ];
    let psi = &spin_network_states(&g, &[h(1), h(2)], false)[0].function;
    let nested = |a: usize, b: usize, c: usize| {
        let x = flux_commutator(&fs[a], &fs[b], &flux_apply(&fs[c], psi).unwrap()).unwrap();
        let y = flux_apply(&fs[c], &flux_commutator(&fs[a], &fs[b], psi).unwrap()).unwrap();
        x.add_scaled(&y, re(-1.0)).unwrap()
    };
    let jacobi = nested(0, 1, 2)
        .add_scaled(&nested(1, 2, 0), re(1.0))
        .unwrap()
        .add_scaled(&nested(2, 0, 1), re(1.0))
        .unwrap()
        .norm_sqr()
        .sqrt();
    let term = nested(0, 1, 2).norm_sqr().sqrt();
    // random stars at a shared vertex, two planes through it
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst, mut smallest) = (0.0f64, f64::INFINITY);
    for _ in 0..50 {
        let k = rng.random_range(3..=5);
        let mut vertices = vec![Point::zeros()];
        let mut edges = Vec::new();
        for e in 0..k {
            let end = random_direction(&mut rng);
            vertices.push(end);
            if rng.random_bool(0.5) {
                edges.push(Edge { start: 0, end: e + 1, polyline: vec![Point::zeros(), end] });
            } else {
                edges.push(Edge { start: e + 1, end: 0, polyline: vec![end, Point::zeros()] });
            }
        }
        let g = Arc::new(EmbeddedGraph::new(vertices, edges).unwrap());
        let f1 = FluxSpec::new(disc(random_direction(&mut rng)), affine_smearing(&mut rng));
        let f2 = FluxSpec::new(disc(random_direction(&mut rng)), affine_smearing(&mut rng));
        let psi = random_function(&g, &mut rng, 1..=2);
        let direct = flux_commutator(&f1, &f2, &psi).unwrap();
        let closed = flux_commutator_closed_form(&f1, &f2, &psi).unwrap();
        worst = worst.max(distance(&direct, &closed).unwrap());
        smallest = smallest.min(direct.norm_sqr().sqrt());
    }
    check(
        jacobi <= 1e-12 && term > 1e-6 && worst <= 1e-12 && smallest > 1e-6,
        format!(
            "Jacobi sum {jacobi:e} (single term {term:.3}); 50 random configurations, closed form defect {worst:e}, smallest commutator norm {smallest:.3e}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let g = generic_loops();
    let s1 = disc(pt(0., 0., 1.));
    let s2 = disc(pt(1., 0., 0.));
    // a small disc that only meets the interior of the first loop
    let s3 = Surface::regular_polygon(pt(0.64, 0.46, 0.), pt(0., 0., 1.), 0.1, 8).unwrap();
    let mut intersecting = f64::INFINITY;
    let mut disjoint = 0.0f64;
    for spins in [[h(1), h(1)], [h(1), h(2)], [h(2), h(2)]] {
        let basis: Vec<CylFun> = spin_network_states(&g, &spins, true).into_iter().map(|s| s.function).collect();
        let a1 = area_matrix(&s1, &basis).unwrap();
        let a2 = area_matrix(&s2, &basis).unwrap();
        let a3 = area_matrix(&s3, &basis).unwrap();
        if norm(&a3) < 1e-6 {
            return Err("disjoint surface does not see the state".into());
        }
        intersecting = intersecting.min(norm(&commutator(&a1, &a2)));
        disjoint = disjoint.max(norm(&commutator(&a1, &a3)));
    }
    check(
        intersecting > 1e-6 && disjoint <= 1e-12,
        format!("smallest intersecting commutator {intersecting:.3e}, largest disjoint commutator {disjoint:e}"),
    )
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Process::new(env!("CARGO_BIN_EXE_qgeom")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("qgeom {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn csv_rows(bytes: &[u8]) -> Vec<(f64, usize)> {
    String::from_utf8_lossy(bytes)
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0f64;
    let mut rows = 0;
    let cases = [
        ("area-spectrum", "one_crossing.json", 1.0),
        ("area-spectrum", "four_valent.json", 1.0),
        ("volume-spectrum", "four_valent.json", 1.5),
        ("volume-spectrum", "trivalent.json", 1.5),
    ];
    let mut base_row = f64::NAN;
    for (command, file, power) in cases {
        let input = fixture(file);
        let input = input.to_str().unwrap();
        let one = csv_rows(&cli(&["--command", command, "--input", input, "--gamma", "1"])?);
        let two = csv_rows(&cli(&["--command", command, "--input", input, "--gamma", "2"])?);
        if one.len() != two.len() || one.is_empty() {
            return Err(format!("{command} on {file}: row counts {} and {}", one.len(), two.len()));
        }
        if file == "one_crossing.json" {
            base_row = one[0].0;
        }
        let factor = 2f64.powf(power);
        for ((a, ma), (b, mb)) in one.iter().zip(&two) {
            if ma != mb {
                return Err(format!("{command} on {file}: multiplicities differ"));
            }
            let err = if *a == 0.0 { b.abs() } else { (b / a - factor).abs() / factor };
            worst = worst.max(err);
            rows += 1;
        }
    }
    let want = 4.0 * std::f64::consts::PI * 3f64.sqrt();
    let base_err = (base_row - want).abs() / want;
    check(
        worst <= 1e-12 && base_err <= 1e-12,
        format!("{rows} rows at γ = 1, 2, worst relative deviation {worst:e}; one-crossing row {base_row} (4π√3, relative {base_err:e})"),
    )
}

fn criterion_9() -> Outcome {
    let jobs: [(&str, &str, &[&str]); 7] = [
        ("area-spectrum", "four_valent.json", &[]),
        ("volume-spectrum", "four_valent.json", &["--c", "0.7"]),
        ("inner-product", "one_crossing.json", &["--seed", "11", "--samples", "5000"]),
        ("holonomy", "four_valent.json", &[]),
        ("flux-matrix", "one_crossing.json", &["--format", "pretty"]),
        ("commutator-check", "four_valent.json", &[]),
        ("basis-enum", "trivalent.json", &[]),
    ];
    for (command, file, extra) in jobs {
        let input = fixture(file);
        let mut args = vec!["--command", command, "--input", input.to_str().unwrap()];
        args.extend_from_slice(extra);
        let first = cli(&args)?;
        let second = cli(&args)?;
        if first != second || first.is_empty() {
            return Err(format!("{command} on {file} differs between runs"));
        }
    }
    Ok(format!("{} commands run twice, byte-identical output", jobs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Peter-Weyl orthonormality", criterion_1),
        ("refinement invariance", criterion_2),
        ("holonomy contract", criterion_3),
        ("area spectrum", criterion_4),
        ("volume vanishing", criterion_5),
        ("flux algebra", criterion_6),
        ("area non-commutativity", criterion_7),
        ("Immirzi scaling", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{secs:.1} s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail} [{secs:.1} s]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
