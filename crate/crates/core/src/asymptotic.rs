//! Nilpotent cones and orbits, infinitesimal variations at infinity (IVIs),
//! their integration to `X₋₁` data and the integrability check.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::filtration::{self, DecFiltration, IncFiltration};
use crate::forms::{self, BilForm};
use crate::lie::{self, Centralizer};
use crate::matrix::Mat;
use crate::mixed::{self, MixedHodge, PmhsData};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Beyond this many generators the `{1,2}^r` grid is replaced by the
/// all-ones point and its single-coordinate doublings.
pub const FULL_GRID_MAX_GENERATORS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentCone {
    generators: Vec<Mat>,
}

impl NilpotentCone {
    pub fn new(dim_v: usize, generators: Vec<Mat>) -> Result<Self> {
        for g in &generators {
            if g.rows() != dim_v || g.cols() != dim_v {
                return Err(Error::DimensionMismatch(format!(
                    "cone generator of size {}x{} on C^{dim_v}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(NilpotentCone { generators })
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Σ λ_j N_j`.
    pub fn point(&self, dim_v: usize, coeffs: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(dim_v, dim_v);
        for (c, n) in coeffs.iter().zip(&self.generators) {
            out = &out + &n.scale(c);
        }
        out
    }
}

/// `{N_1, …, N_r; F}` of weight `k` polarized by `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOrbit {
    pub cone: NilpotentCone,
    pub f: DecFiltration,
    pub weight: i32,
    pub q: BilForm,
}

impl NilpotentOrbit {
    pub fn new(generators: Vec<Mat>, f: DecFiltration, weight: i32, q: BilForm) -> Result<Self> {
        let n = q.dim();
        if f.ambient_dim() != n {
            return Err(Error::DimensionMismatch("filtration and form".into()));
        }
        Ok(NilpotentOrbit {
            cone: NilpotentCone::new(n, generators)?,
            f,
            weight,
            q,
        })
    }

    pub fn dim_v(&self) -> usize {
        self.q.dim()
    }

    /// `N_1 + … + N_r`, or `0` without generators.
    pub fn barycenter(&self) -> Mat {
        let ones = vec![Scalar::one(); self.cone.len()];
        self.cone.point(self.dim_v(), &ones)
    }

    pub fn cone_span(&self) -> Subspace {
        lie::flat_span(self.dim_v(), self.cone.generators())
    }

    /// `(W(N)[-k], F, N, Q)` for the barycenter `N`.
    pub fn limit_data(&self) -> Result<PmhsData> {
        let n = self.barycenter();
        let w = filtration::weight_filtration(&n)?.shift(-self.weight);
        Ok(PmhsData {
            weight: self.weight,
            w,
            f: self.f.clone(),
            n,
            q: self.q.clone(),
        })
    }

    pub fn limit_mhs(&self) -> Result<MixedHodge> {
        let d = self.limit_data()?;
        MixedHodge::new(d.w, d.f)
    }

    /// `p₋₁` of the limit mixed Hodge structure.
    pub fn p_minus_one(&self) -> Result<Subspace> {
        mixed::p_minus_one(&self.limit_mhs()?, &self.q)
    }
}

fn sample_points(r: usize, samples: &[Vec<Scalar>]) -> Vec<(String, Vec<Scalar>)> {
    let mut pts = vec![("barycenter".to_string(), vec![Scalar::one(); r])];
    let two = Scalar::from_int(2);
    if r <= FULL_GRID_MAX_GENERATORS {
        for mask in 1u64..(1u64 << r) {
            let c = (0..r)
                .map(|j| if mask >> j & 1 == 1 { two.clone() } else { Scalar::one() })
                .collect();
            pts.push((format!("grid {mask}"), c));
        }
    } else {
        for j in 0..r {
            let mut c = vec![Scalar::one(); r];
            c[j] = two.clone();
            pts.push((format!("doubled {j}"), c));
        }
    }
    for (i, s) in samples.iter().enumerate() {
        pts.push((format!("sample {i}"), s.clone()));
    }
    pts
}

/// Checks the nilpotent-orbit conditions; the cone condition is verified on
/// the barycenter, the `{1,2}^r` grid and the supplied samples.
pub fn verify_orbit(orbit: &NilpotentOrbit, samples: &[Vec<Scalar>]) -> Result<Report> {
    let r = orbit.cone.len();
    if r == 0 {
        return Err(Error::EmptyCone);
    }
    for (i, s) in samples.iter().enumerate() {
        if s.len() != r || !s.iter().all(Scalar::is_positive_real) {
            return Err(Error::NonPositiveSample(i));
        }
    }
    let n = orbit.dim_v();
    let k = orbit.weight;
    let gens = orbit.cone.generators();
    let mut rep = Report::new(format!("nilpotent orbit with {r} generators, weight {k}"));

    let real_bad: Vec<String> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_real())
        .map(|(j, _)| format!("N_{j} is not real"))
        .collect();
    match lie::first_noncommuting(gens) {
        None if real_bad.is_empty() => rep.pass("(a) commuting and real"),
        None => rep.check("(a) commuting and real", false, real_bad.join("; ")),
        Some((i, j)) => rep.check("(a) commuting and real", false, format!("N_{i} and N_{j} do not commute")),
    }

    let mut horiz_bad = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if !forms::in_isometry_algebra(g, &orbit.q)? {
            horiz_bad.push(format!("N_{j} is not in g"));
        } else if !filtration::in_filtration_of_gl(g, &orbit.f, -1) {
            horiz_bad.push(format!("N_{j} is not in F^-1 g"));
        }
    }
    rep.check("(b) N_j in F^-1 g", horiz_bad.is_empty(), horiz_bad.join("; "));

    let points = sample_points(r, samples);
    let nil_ok = |m: &Mat| k >= 0 && m.pow((k + 1) as u32).is_zero();
    let mut nil_bad: Vec<String> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !nil_ok(g))
        .map(|(j, _)| format!("N_{j}"))
        .collect();
    let evaluated: Vec<(bool, Result<IncFiltration>)> = points
        .par_iter()
        .map(|(_, c)| {
            let m = orbit.cone.point(n, c);
            (nil_ok(&m), filtration::weight_filtration(&m))
        })
        .collect();
    for ((label, _), (ok, _)) in points.iter().zip(&evaluated) {
        if !ok {
            nil_bad.push(label.clone());
        }
    }
    rep.check(
        "(c) N^(k+1) = 0",
        nil_bad.is_empty(),
        if nil_bad.is_empty() { String::new() } else { format!("fails for {}", nil_bad.join(", ")) },
    );

    let base = evaluated[0].1.clone();
    let mut w_bad = Vec::new();
    for ((label, _), (_, w)) in points.iter().zip(&evaluated) {
        match (w, &base) {
            (Ok(w), Ok(b)) if w == b => {}
            (Err(e), _) => w_bad.push(format!("{label}: {e}")),
            _ => w_bad.push(label.clone()),
        }
    }
    rep.check(
        "(d) W constant on the cone (sampled)",
        w_bad.is_empty(),
        if w_bad.is_empty() {
            format!("sampled check on {} cone points", points.len())
        } else {
            format!("weight filtration differs at {}", w_bad.join(", "))
        },
    );
    rep.set("cone_check", json!("sampled"));
    rep.set("cone_points", json!(points.len()));

    match orbit.limit_data() {
        Ok(d) => {
            let p = mixed::verify_pmhs(&d)?;
            rep.absorb("(e) ", &p);
        }
        Err(e) => rep.check("(e) limit PMHS", false, e.to_string()),
    }
    Ok(rep)
}

/// A nilpotent orbit with an abelian subspace `a ⊆ p₋₁` containing the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ivi {
    pub orbit: NilpotentOrbit,
    pub a: Subspace,
}

impl Ivi {
    pub fn new(orbit: NilpotentOrbit, basis: &[Mat]) -> Result<Self> {
        let n = orbit.dim_v();
        for b in basis {
            if b.rows() != n || b.cols() != n {
                return Err(Error::DimensionMismatch("abelian basis element size".into()));
            }
        }
        let a = lie::flat_span(n, basis);
        Ok(Ivi { orbit, a })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn basis(&self) -> Vec<Mat> {
        lie::unflatten_basis(self.orbit.dim_v(), &self.a)
    }
}

/// Orbit checks plus `a ⊆ p₋₁`, `[a, a] = 0` and `span(N_j) ⊆ a`.
/// Without generators the orbit is a polarized Hodge structure, checked as
/// a polarized mixed Hodge structure with `N = 0`.
pub fn verify_ivi(v: &Ivi) -> Result<Report> {
    let orbit = &v.orbit;
    let n = orbit.dim_v();
    let r = orbit.cone.len();
    let mut rep = Report::new(format!("IVI of dimension {}", v.dim()));
    if v.a.ambient_dim() != n * n {
        return Err(Error::DimensionMismatch("abelian space ambient".into()));
    }
    if r == 0 {
        let d = orbit.limit_data()?;
        rep.absorb("orbit: ", &mixed::verify_pmhs(&d)?);
    } else {
        rep.absorb("orbit: ", &verify_orbit(orbit, &[])?);
    }

    let orbit_ok = rep.passed();
    match orbit.p_minus_one() {
        Ok(p) if orbit_ok => {
            let ok = p.contains_subspace(&v.a);
            rep.check("a in p_-1", ok, if ok { "" } else { "a is not contained in p_-1" });
            rep.set("dim_p_minus_one", json!(p.dim()));
        }
        Ok(_) => rep.check("a in p_-1", false, "not evaluated: the orbit does not verify"),
        Err(e) => rep.check("a in p_-1", false, format!("not evaluated: {e}")),
    }

    let basis = v.basis();
    match lie::first_noncommuting(&basis) {
        None => rep.pass("a abelian"),
        Some((i, j)) => rep.check("a abelian", false, format!("basis elements {i} and {j} do not commute")),
    }
    let cone_ok = v.a.contains_subspace(&orbit.cone_span());
    rep.check("cone span in a", cone_ok, "");
    rep.set("dim", json!(v.dim()));
    rep.set("cone_generators", json!(r));
    Ok(rep)
}

/// `{X ∈ ambient : [X, a] = 0} = a`.
pub fn is_maximal_abelian(a: &Subspace, ambient: &Subspace) -> Result<bool> {
    let n2 = a.ambient_dim();
    let n = (n2 as f64).sqrt().round() as usize;
    let basis = lie::unflatten_basis(n, a);
    if let Some((i, j)) = lie::first_noncommuting(&basis) {
        return Err(Error::NotAbelian(i, j));
    }
    if !ambient.contains_subspace(a) {
        return Err(Error::Verification("the abelian space is not inside the ambient space".into()));
    }
    Ok(Centralizer::new(ambient.clone()).of(&basis) == *a)
}

/// Replaces the cone by the single generator `Σ c_j N_j`.
pub fn collapse_cone(v: &Ivi, coeffs: &[Scalar]) -> Result<Ivi> {
    let r = v.orbit.cone.len();
    if coeffs.len() != r {
        return Err(Error::DimensionMismatch(format!("{} coefficients for {r} generators", coeffs.len())));
    }
    if let Some(i) = coeffs.iter().position(|c| !c.is_positive_real()) {
        return Err(Error::NonPositiveCoefficient(i));
    }
    if r == 0 {
        return Ok(v.clone());
    }
    let n = v.orbit.dim_v();
    let generator = v.orbit.cone.point(n, coeffs);
    let orbit = NilpotentOrbit::new(vec![generator], v.orbit.f.clone(), v.orbit.weight, v.orbit.q.clone())?;
    let out = Ivi { orbit, a: v.a.clone() };
    let rep = verify_ivi(&out)?;
    if !rep.passed() {
        return Err(Error::Postcondition("collapsed cone does not give an IVI".into()));
    }
    Ok(out)
}

/// Exponents of `s_1..s_r` (with `s_j = e^{2πi z_j}`) and `t_1..t_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.s.iter().sum::<u32>() + self.t.iter().sum::<u32>()
    }

    fn is_linear_t(&self) -> Option<usize> {
        if self.s.iter().any(|&e| e != 0) || self.t.iter().sum::<u32>() != 1 {
            return None;
        }
        self.t.iter().position(|&e| e == 1)
    }
}

/// `X₋₁(z, t) = Σ z_j N_j + Σ t_l B_l + Σ c_μ (s, t)^μ`, the higher
/// terms in `s_j = e^{2πi z_j}` and `t` being treated formally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    dim_v: usize,
    z_part: Vec<Mat>,
    t_linear: Vec<Mat>,
    higher: BTreeMap<Monomial, Mat>,
}

impl PolyMap {
    /// Linear `t` monomials in `higher` are merged into `t_linear`; a
    /// constant term is rejected since `Γ₋₁` vanishes at the origin.
    pub fn new(dim_v: usize, z_part: Vec<Mat>, t_linear: Vec<Mat>, higher: Vec<(Monomial, Mat)>) -> Result<Self> {
        let r = z_part.len();
        let mut t_linear = t_linear;
        let m = higher.iter().map(|(mu, _)| mu.t.len()).max().unwrap_or(0).max(t_linear.len());
        t_linear.resize(m, Mat::zeros(dim_v, dim_v));
        for x in z_part.iter().chain(&t_linear).chain(higher.iter().map(|(_, x)| x)) {
            if x.rows() != dim_v || x.cols() != dim_v {
                return Err(Error::DimensionMismatch("PolyMap coefficient size".into()));
            }
        }
        let mut map: BTreeMap<Monomial, Mat> = BTreeMap::new();
        for (mut mu, x) in higher {
            if mu.s.len() > r {
                return Err(Error::DimensionMismatch(format!("monomial in {} s-variables with r = {r}", mu.s.len())));
            }
            mu.s.resize(r, 0);
            mu.t.resize(m, 0);
            if mu.degree() == 0 {
                return Err(Error::Verification("the Γ part must vanish at the origin".into()));
            }
            if let Some(l) = mu.is_linear_t() {
                t_linear[l] = &t_linear[l] + &x;
                continue;
            }
            let entry = map.entry(mu).or_insert_with(|| Mat::zeros(dim_v, dim_v));
            *entry = &*entry + &x;
        }
        map.retain(|_, x| !x.is_zero());
        Ok(PolyMap {
            dim_v,
            z_part,
            t_linear,
            higher: map,
        })
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn z_part(&self) -> &[Mat] {
        &self.z_part
    }

    pub fn t_linear(&self) -> &[Mat] {
        &self.t_linear
    }

    pub fn higher(&self) -> &BTreeMap<Monomial, Mat> {
        &self.higher
    }

    pub fn z_vars(&self) -> usize {
        self.z_part.len()
    }

    pub fn t_vars(&self) -> usize {
        self.t_linear.len()
    }

    /// `∂X₋₁/∂u` as a polynomial in `(λ, s, t)` with `λ = 2πi`: keys are
    /// `(power of λ, monomial)`.
    pub fn partial(&self, var: Var) -> BTreeMap<(u32, Monomial), Mat> {
        let r = self.z_vars();
        let m = self.t_vars();
        let zero_mono = Monomial {
            s: vec![0; r],
            t: vec![0; m],
        };
        let mut out: BTreeMap<(u32, Monomial), Mat> = BTreeMap::new();
        let mut add = |key: (u32, Monomial), x: Mat| {
            let e = out.entry(key).or_insert_with(|| Mat::zeros(self.dim_v, self.dim_v));
            *e = &*e + &x;
        };
        match var {
            Var::Z(j) => {
                add((0, zero_mono), self.z_part[j].clone());
                // ∂_z s^a = 2πi a_j s^a
                for (mu, x) in &self.higher {
                    let a = mu.s[j];
                    if a > 0 {
                        add((1, mu.clone()), x.scale(&Scalar::from_int(a as i64)));
                    }
                }
            }
            Var::T(l) => {
                add((0, zero_mono), self.t_linear[l].clone());
                for (mu, x) in &self.higher {
                    let b = mu.t[l];
                    if b > 0 {
                        let mut nu = mu.clone();
                        nu.t[l] -= 1;
                        add((0, nu), x.scale(&Scalar::from_int(b as i64)));
                    }
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn variables(&self) -> Vec<Var> {
        (0..self.z_vars()).map(Var::Z).chain((0..self.t_vars()).map(Var::T)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z(usize),
    T(usize),
}

fn poly_commutator(
    a: &BTreeMap<(u32, Monomial), Mat>,
    b: &BTreeMap<(u32, Monomial), Mat>,
) -> BTreeMap<(u32, Monomial), Mat> {
    let mut out: BTreeMap<(u32, Monomial), Mat> = BTreeMap::new();
    for ((pa, ma), xa) in a {
        for ((pb, mb), xb) in b {
            let key = (
                pa + pb,
                Monomial {
                    s: ma.s.iter().zip(&mb.s).map(|(x, y)| x + y).collect(),
                    t: ma.t.iter().zip(&mb.t).map(|(x, y)| x + y).collect(),
                },
            );
            let c = xa.commutator(xb);
            let e = out.entry(key).or_insert_with(|| Mat::zeros(xa.rows(), xa.rows()));
            *e = &*e + &c;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// `[∂_u X₋₁, ∂_v X₋₁] = 0` identically for every pair of variables, which
/// is `dX₋₁ ∧ dX₋₁ = 0`.
pub fn check_integrability(x: &PolyMap) -> bool {
    first_nonintegrable_pair(x).is_none()
}

pub fn first_nonintegrable_pair(x: &PolyMap) -> Option<(Var, Var)> {
    let vars = x.variables();
    let partials: Vec<_> = vars.iter().map(|&v| x.partial(v)).collect();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            if !poly_commutator(&partials[i], &partials[j]).is_empty() {
                return Some((vars[i], vars[j]));
            }
        }
    }
    None
}

/// `span(N_j, ∂Γ₋₁/∂t_l at the origin)`.
pub fn a_infinity(x: &PolyMap) -> Subspace {
    let mats: Vec<Mat> = x.z_part.iter().chain(&x.t_linear).cloned().collect();
    lie::flat_span(x.dim_v, &mats)
}

/// `X₋₁ = Σ z_j N_j + Σ t_l B_l` with `B_l` a pivot complement of the cone
/// span inside `a`.
pub fn integrate_ivi(v: &Ivi) -> Result<PolyMap> {
    let rep = verify_ivi(v)?;
    if !rep.passed() {
        let why: Vec<String> = rep.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(Error::Verification(why.join("; ")));
    }
    let n = v.orbit.dim_v();
    let comp = v.orbit.cone_span().complement_in(&v.a)?;
    let bs: Vec<Mat> = comp.iter().map(|c| Mat::unflatten(n, c)).collect();
    let x = PolyMap::new(n, v.orbit.cone.generators().to_vec(), bs, Vec::new())?;
    if !check_integrability(&x) {
        return Err(Error::Postcondition("integrated map is not integrable".into()));
    }
    if a_infinity(&x) != v.a {
        return Err(Error::Postcondition("a_infinity differs from a".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[i64; 2]]) -> Mat {
        Mat::from_ints(rows)
    }

    fn mono(s: &[u32], t: &[u32]) -> Monomial {
        Monomial {
            s: s.to_vec(),
            t: t.to_vec(),
        }
    }

    #[test]
    fn linear_integrability() {
        let n = m(&[[0, 1], [0, 0]]);
        let b = m(&[[0, 2], [0, 0]]);
        let x = PolyMap::new(2, vec![n.clone()], vec![b], vec![]).unwrap();
        assert!(check_integrability(&x));
        let c = m(&[[0, 0], [1, 0]]);
        let y = PolyMap::new(2, vec![n.clone()], vec![c], vec![]).unwrap();
        assert!(!check_integrability(&y));
        assert_eq!(first_nonintegrable_pair(&y), Some((Var::Z(0), Var::T(0))));
        assert_eq!(a_infinity(&x), lie::flat_span(2, &[n]));
    }

    #[test]
    fn quadratic_terms_do_not_reach_a_infinity() {
        let n = m(&[[0, 1], [0, 0]]);
        let b = m(&[[1, 0], [0, -1]]);
        let x = PolyMap::new(2, vec![n.clone()], vec![], vec![(mono(&[], &[2]), b.clone())]).unwrap();
        assert_eq!(x.t_vars(), 1);
        assert_eq!(a_infinity(&x), lie::flat_span(2, std::slice::from_ref(&n)));
        // [N, 2tB] ≠ 0
        assert!(!check_integrability(&x));
        // a linear t monomial given as "higher" is normalized
        let y = PolyMap::new(2, vec![n.clone()], vec![], vec![(mono(&[0], &[1]), n.clone())]).unwrap();
        assert_eq!(y.t_linear(), std::slice::from_ref(&n));
        assert!(y.higher().is_empty());
        assert!(PolyMap::new(2, vec![], vec![], vec![(mono(&[], &[]), n)]).is_err());
    }

    #[test]
    fn s_dependence_carries_two_pi_i() {
        // X = zN + s·B: ∂_z X = N + 2πi s B, only one variable, always integrable
        let n = m(&[[0, 1], [0, 0]]);
        let b = m(&[[0, 0], [1, 0]]);
        let x = PolyMap::new(2, vec![n.clone()], vec![], vec![(mono(&[1], &[]), b.clone())]).unwrap();
        assert!(check_integrability(&x));
        let p = x.partial(Var::Z(0));
        assert_eq!(p.len(), 2);
        assert_eq!(p[&(1, mono(&[1], &[]))], b);
        // adding t·N: [N + 2πi s B, N] = 2πi s [B, N] ≠ 0
        let y = PolyMap::new(2, vec![n.clone()], vec![n.clone()], vec![(mono(&[1], &[0]), b)]).unwrap();
        assert!(!check_integrability(&y));
    }
}
