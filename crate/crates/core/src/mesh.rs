//! Structured-grid immersion `X = Re ∫ 2φ` and OBJ/PLY export.

use std::collections::VecDeque;
use std::f64::consts::TAU;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{RationalDifferential, SpherePoint};
use crate::catalog::Surface;
use crate::error::{Error, Result};
use crate::ramification::PuncturedSphere;
use crate::r3::phi_components;
use crate::r4::phi_components4;
use crate::weierstrass::{C64Map, CurvatureField, VerifyOptions};

/// Gauss–Legendre nodes and weights on `[−1, 1]`, 8 points.
const GL_NODES: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL_WEIGHTS: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

pub const DEFAULT_CLOSURE_TOL: f64 = 1e-8;
pub const DEFAULT_EXCLUDE_RADIUS: f64 = 1e-2;

/// Cap on the number of quadrature pieces per grid edge.
const MAX_PIECES: f64 = 4096.0;

/// Parameter grid. A rectangle is sampled in `z`; an annulus in log-polar
/// coordinates `w = log z`, with the seam `θ = 0 ≡ 2π` duplicated.
#[derive(Clone, Debug, PartialEq)]
pub enum MeshSpec {
    Rectangle { re: (f64, f64), im: (f64, f64), n_re: usize, n_im: usize },
    Annulus { radii: (f64, f64), n_r: usize, n_theta: usize },
}

impl MeshSpec {
    /// Log-polar annulus `exclude ≤ |z| ≤ outer` when `0` is a puncture, else
    /// the square `[−outer, outer]²`.
    pub fn default_for(domain: &PuncturedSphere, grid: (usize, usize), exclude: f64, outer: f64) -> Self {
        if domain.is_puncture(&SpherePoint::from_int(0)) {
            MeshSpec::Annulus { radii: (exclude, outer), n_r: grid.0, n_theta: grid.1 }
        } else {
            MeshSpec::Rectangle { re: (-outer, outer), im: (-outer, outer), n_re: grid.0, n_im: grid.1 }
        }
    }

    fn dims(&self) -> (usize, usize) {
        match *self {
            MeshSpec::Rectangle { n_re, n_im, .. } => (n_re, n_im),
            MeshSpec::Annulus { n_r, n_theta, .. } => (n_r, n_theta),
        }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.dims();
        if a < 2 || b < 2 {
            return Err(Error::InvalidTopology("mesh grid needs at least 2x2 vertices".into()));
        }
        match *self {
            MeshSpec::Rectangle { re, im, .. } if !(re.0 < re.1 && im.0 < im.1) => {
                Err(Error::InvalidTopology("empty mesh rectangle".into()))
            }
            MeshSpec::Annulus { radii, .. } if !(0.0 < radii.0 && radii.0 < radii.1) => {
                Err(Error::InvalidTopology("annulus radii must satisfy 0 < inner < outer".into()))
            }
            _ => Ok(()),
        }
    }

    /// Parameter `w` of vertex `(i, j)`.
    fn param(&self, i: usize, j: usize) -> Complex64 {
        let lerp = |(lo, hi): (f64, f64), k: usize, n: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
        match *self {
            MeshSpec::Rectangle { re, im, n_re, n_im } => Complex64::new(lerp(re, i, n_re), lerp(im, j, n_im)),
            MeshSpec::Annulus { radii, n_r, n_theta } => {
                Complex64::new(lerp((radii.0.ln(), radii.1.ln()), i, n_r), lerp((0.0, TAU), j, n_theta))
            }
        }
    }

    fn to_z(&self, w: Complex64) -> Complex64 {
        match self {
            MeshSpec::Rectangle { .. } => w,
            MeshSpec::Annulus { .. } => w.exp(),
        }
    }

    fn dz_dw(&self, w: Complex64) -> Complex64 {
        match self {
            MeshSpec::Rectangle { .. } => Complex64::new(1.0, 0.0),
            MeshSpec::Annulus { .. } => w.exp(),
        }
    }

    /// Distance in `z` from `p` to the image of the parameter segment `[a, b]`
    /// (a straight segment, a radial segment or a circular arc).
    fn edge_distance(&self, a: Complex64, b: Complex64, p: Complex64) -> f64 {
        match self {
            MeshSpec::Rectangle { .. } => segment_distance(a, b, p),
            MeshSpec::Annulus { .. } if a.im == b.im => segment_distance(a.exp(), b.exp(), p),
            MeshSpec::Annulus { .. } => {
                let r = a.re.exp();
                let t = p.arg().rem_euclid(TAU);
                let (t0, t1) = (a.im.min(b.im), a.im.max(b.im));
                if (t0..=t1).contains(&t) {
                    (p.norm() - r).abs()
                } else {
                    (a.exp() - p).norm().min((b.exp() - p).norm())
                }
            }
        }
    }

    /// Whether the cell with parameter corners `lo`, `hi` contains `p`.
    fn cell_contains(&self, lo: Complex64, hi: Complex64, p: Complex64) -> bool {
        let w = match self {
            MeshSpec::Rectangle { .. } => p,
            MeshSpec::Annulus { .. } => {
                if p.norm() == 0.0 {
                    return false;
                }
                Complex64::new(p.norm().ln(), p.arg().rem_euclid(TAU))
            }
        };
        lo.re <= w.re && w.re <= hi.re && lo.im <= w.im && w.im <= hi.im
    }
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (a + ab * t - p).norm()
}

#[derive(Clone, Debug)]
pub struct MeshOptions {
    pub spec: MeshSpec,
    pub exclude_radius: f64,
    /// Requested base point `z₀`; the nearest kept vertex is used.
    pub base: Option<Complex64>,
    pub curvature: bool,
    pub closure_tol: f64,
}

impl MeshOptions {
    pub fn new(spec: MeshSpec) -> Self {
        Self { spec, exclude_radius: DEFAULT_EXCLUDE_RADIUS, base: None, curvature: false, closure_tol: DEFAULT_CLOSURE_TOL }
    }
}

/// Immersed grid. Positions are `Re ∫_{z₀}^{z} 2φ` with `X(z₀) = 0`.
#[derive(Clone, Debug)]
pub struct Mesh {
    /// 3 for R³, 4 for R⁴.
    pub dim: usize,
    pub positions: Vec<Vec<f64>>,
    /// Parameter point `z` of each vertex.
    pub params: Vec<Complex64>,
    /// Quads, counter-clockwise in the parameter plane.
    pub faces: Vec<[usize; 4]>,
    pub curvature: Option<Vec<f64>>,
    pub spec: MeshSpec,
    pub base_vertex: usize,
    pub base_point: Complex64,
    /// Largest `|Re ∮ 2φ|` over elementary cell loops.
    pub closure_max: f64,
    /// Largest position mismatch across the duplicated annulus seam.
    pub seam_max: Option<f64>,
}

/// Double-precision evaluator of `r₀ + s·r₁`.
struct C64Differential {
    r0: C64Map,
    r1: Option<(C64Map, Complex64)>,
}

impl C64Differential {
    fn new(w: &RationalDifferential) -> Self {
        let r1 = w.symbol().map(|s| {
            let sc = s.to_complex(64);
            (C64Map::new(w.sym_coeff()), Complex64::new(sc.real().to_f64(), sc.imag().to_f64()))
        });
        Self { r0: C64Map::new(w.coeff()), r1 }
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = self.r0.eval(z);
        if let Some((m, s)) = &self.r1 {
            v += m.eval(z) * s;
        }
        v
    }
}

fn gauss_legendre(spec: &MeshSpec, phis: &[C64Differential], a: Complex64, b: Complex64, out: &mut [Complex64]) {
    let mid = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    for (x, wt) in GL_NODES.iter().zip(GL_WEIGHTS) {
        for w in [mid + half * *x, mid - half * *x] {
            let z = spec.to_z(w);
            let jac = spec.dz_dw(w) * half * wt;
            for (o, phi) in out.iter_mut().zip(phis) {
                *o += phi.eval(z) * jac;
            }
        }
    }
}

/// Composite 8-point Gauss–Legendre along the parameter segment `[a, b]`,
/// with pieces no longer than half their distance to the nearest singularity.
fn edge_integrals(
    spec: &MeshSpec,
    phis: &[C64Differential],
    singular: &[Complex64],
    a: Complex64,
    b: Complex64,
) -> Vec<Complex64> {
    let len = match spec {
        MeshSpec::Rectangle { .. } => (b - a).norm(),
        MeshSpec::Annulus { .. } => a.re.exp().max(b.re.exp()) * (b - a).norm(),
    };
    let dist = singular.iter().map(|p| spec.edge_distance(a, b, *p)).fold(f64::INFINITY, f64::min);
    let pieces = if dist.is_finite() && dist > 0.0 { (2.0 * len / dist).ceil().clamp(1.0, MAX_PIECES) as usize } else { 1 };
    let mut out = vec![Complex64::new(0.0, 0.0); phis.len()];
    let step = (b - a) / pieces as f64;
    for k in 0..pieces {
        let lo = a + step * k as f64;
        gauss_legendre(spec, phis, lo, lo + step, &mut out);
    }
    out
}

/// Integrates `2φᵢ` over the grid of `opts.spec` on `Σ`.
pub fn immerse(phis: &[RationalDifferential], domain: &PuncturedSphere, opts: &MeshOptions) -> Result<Mesh> {
    let spec = &opts.spec;
    spec.validate()?;
    let eps = opts.exclude_radius;
    let (na, nb) = spec.dims();
    let idx = |i: usize, j: usize| i * nb + j;
    let punctures: Vec<Complex64> = domain.finite_punctures().iter().map(|p| p.to_c64()).collect();
    let w: Vec<Complex64> = (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| spec.param(i, j)).collect();
    let z: Vec<Complex64> = w.iter().map(|&x| spec.to_z(x)).collect();
    let slack = eps * (1.0 - 1e-12);
    let vertex_ok: Vec<bool> = z.iter().map(|&v| punctures.iter().all(|p| (v - p).norm() >= slack)).collect();
    if let Some(b) = opts.base {
        if punctures.iter().any(|p| (b - p).norm() < eps) {
            return Err(Error::GridTouchesPuncture(format!("base point {b} lies within {eps} of a puncture")));
        }
    }

    let edge_ok = |a: usize, b: usize| punctures.iter().all(|p| spec.edge_distance(w[a], w[b], *p) >= slack);
    let mut cells = Vec::new();
    for i in 0..na - 1 {
        for j in 0..nb - 1 {
            let q = [idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)];
            if !q.iter().all(|&v| vertex_ok[v]) {
                continue;
            }
            if punctures.iter().any(|p| spec.cell_contains(w[q[0]], w[q[2]], *p)) {
                continue;
            }
            if (0..4).all(|e| edge_ok(q[e], q[(e + 1) % 4])) {
                cells.push(q);
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::GridTouchesPuncture("no grid cell avoids the exclusion disks".into()));
    }

    // Directed edges (low index → high index) of kept cells.
    let mut edges: Vec<(usize, usize)> = cells
        .iter()
        .flat_map(|q| (0..4).map(move |e| (q[e].min(q[(e + 1) % 4]), q[e].max(q[(e + 1) % 4]))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let evals: Vec<C64Differential> = phis.iter().map(C64Differential::new).collect();
    // The origin is at w = −∞ in log-polar coordinates.
    let singular: Vec<Complex64> = match spec {
        MeshSpec::Annulus { .. } => punctures.iter().copied().filter(|p| p.norm() > 0.0).collect(),
        MeshSpec::Rectangle { .. } => punctures.clone(),
    };
    let integrals: Vec<Vec<Complex64>> =
        edges.par_iter().map(|&(a, b)| edge_integrals(spec, &evals, &singular, w[a], w[b])).collect();
    let edge_index = |a: usize, b: usize| -> (usize, f64) {
        let key = (a.min(b), a.max(b));
        let k = edges.binary_search(&key).expect("edge of a kept cell");
        (k, if a < b { 1.0 } else { -1.0 })
    };

    let mut closure_max: f64 = 0.0;
    for q in &cells {
        let mut loop_sum = vec![Complex64::new(0.0, 0.0); phis.len()];
        for e in 0..4 {
            let (k, sign) = edge_index(q[e], q[(e + 1) % 4]);
            for (s, v) in loop_sum.iter_mut().zip(&integrals[k]) {
                *s += v * sign;
            }
        }
        for s in loop_sum {
            closure_max = closure_max.max((2.0 * s.re).abs());
        }
    }
    if closure_max >= opts.closure_tol {
        return Err(Error::ClosureTolExceeded(closure_max));
    }

    // Spanning tree by breadth-first search from the base vertex.
    let n = na * nb;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let in_mesh: Vec<bool> = (0..n).map(|v| !adj[v].is_empty()).collect();
    let target = opts.base.unwrap_or_else(|| match spec {
        MeshSpec::Annulus { .. } => Complex64::new(1.0, 0.0),
        MeshSpec::Rectangle { re, im, .. } => Complex64::new((re.0 + re.1) / 2.0, (im.0 + im.1) / 2.0),
    });
    let base = (0..n)
        .filter(|&v| in_mesh[v])
        .min_by(|&a, &b| (z[a] - target).norm().total_cmp(&(z[b] - target).norm()))
        .expect("nonempty mesh");
    let dim = phis.len();
    let mut pos: Vec<Option<Vec<f64>>> = vec![None; n];
    pos[base] = Some(vec![0.0; dim]);
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        let pu = pos[u].clone().expect("visited");
        for &v in &adj[u] {
            if pos[v].is_none() {
                let (k, sign) = edge_index(u, v);
                let pv = pu.iter().zip(&integrals[k]).map(|(x, i)| x + 2.0 * sign * i.re).collect();
                pos[v] = Some(pv);
                queue.push_back(v);
            }
        }
    }

    // Compact indexing over the reached component.
    let mut remap = vec![usize::MAX; n];
    let mut positions = Vec::new();
    let mut params = Vec::new();
    for v in 0..n {
        if let Some(p) = &pos[v] {
            remap[v] = positions.len();
            positions.push(p.clone());
            params.push(z[v]);
        }
    }
    let faces: Vec<[usize; 4]> = cells
        .iter()
        .filter(|q| q.iter().all(|&v| remap[v] != usize::MAX))
        .map(|q| q.map(|v| remap[v]))
        .collect();
    let seam_max = match spec {
        MeshSpec::Annulus { .. } => (0..na)
            .filter_map(|i| match (&pos[idx(i, 0)], &pos[idx(i, nb - 1)]) {
                (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)),
                _ => None,
            })
            .reduce(f64::max),
        MeshSpec::Rectangle { .. } => None,
    };
    Ok(Mesh {
        dim,
        positions,
        params,
        faces,
        curvature: None,
        spec: spec.clone(),
        base_vertex: remap[base],
        base_point: z[base],
        closure_max,
        seam_max,
    })
}

/// Immersion of verified catalog or file data, with optional per-vertex `K`.
pub fn immerse_surface(s: &Surface, opts: &MeshOptions, verify: &VerifyOptions) -> Result<Mesh> {
    let (phis, field, report): (Vec<RationalDifferential>, CurvatureField, _) = match s {
        Surface::R3(w) => {
            (phi_components(w).phi.to_vec(), crate::r3::curvature_field(w)?, crate::r3::verify(w, verify)?)
        }
        Surface::R4(w) => {
            (phi_components4(w).phi.to_vec(), crate::r4::curvature_field4(w)?, crate::r4::verify4(w, verify)?)
        }
    };
    if !report.overall {
        return Err(Error::NotVerified("mesh requires data passing full verification".into()));
    }
    let mut mesh = immerse(&phis, s.domain(), opts)?;
    if opts.curvature {
        mesh.curvature = Some(mesh.params.par_iter().map(|&z| field.eval(z)).collect());
    }
    Ok(mesh)
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Wavefront OBJ; R⁴ positions are projected by dropping the last coordinate.
pub fn write_obj<W: Write>(mesh: &Mesh, mut out: W) -> io::Result<()> {
    writeln!(out, "# minsurf mesh: {} vertices, {} faces", mesh.positions.len(), mesh.faces.len())?;
    for p in &mesh.positions {
        writeln!(out, "v {} {} {}", fmt17(p[0]), fmt17(p[1]), fmt17(p[2]))?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
    }
    Ok(())
}

/// Binary little-endian PLY with `x y z` (and `w` in R⁴) plus optional `k`.
pub fn write_ply<W: Write>(mesh: &Mesh, mut out: W) -> io::Result<()> {
    let names = ["x", "y", "z", "w"];
    writeln!(out, "ply")?;
    writeln!(out, "format binary_little_endian 1.0")?;
    writeln!(out, "element vertex {}", mesh.positions.len())?;
    for name in &names[..mesh.dim] {
        writeln!(out, "property double {name}")?;
    }
    if mesh.curvature.is_some() {
        writeln!(out, "property double k")?;
    }
    writeln!(out, "element face {}", mesh.faces.len())?;
    writeln!(out, "property list uchar int vertex_indices")?;
    writeln!(out, "end_header")?;
    for (v, p) in mesh.positions.iter().enumerate() {
        for x in p {
            out.write_all(&x.to_le_bytes())?;
        }
        if let Some(k) = &mesh.curvature {
            out.write_all(&k[v].to_le_bytes())?;
        }
    }
    for f in &mesh.faces {
        out.write_all(&[4u8])?;
        for &i in f {
            out.write_all(&(i as i32).to_le_bytes())?;
        }
    }
    Ok(())
}
