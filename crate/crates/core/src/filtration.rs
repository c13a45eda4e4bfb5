//! Gradings, decreasing and increasing filtrations, pure Hodge structures and
//! the weight filtration of a nilpotent endomorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{self, BilForm};
use crate::lie::IsometryAlgebra;
use crate::matrix::{self, Mat, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::{self, Subspace};

pub type Bidegree = (i32, i32);

/// A direct-sum decomposition of `C^n` indexed by bidegrees. Zero parts are
/// not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigrading {
    ambient: usize,
    parts: BTreeMap<Bidegree, Subspace>,
}

impl Bigrading {
    pub fn new(ambient: usize, parts: BTreeMap<Bidegree, Subspace>) -> Result<Self> {
        let mut total = Subspace::zero(ambient);
        let mut dims = 0;
        let mut kept = BTreeMap::new();
        for (key, s) in parts {
            if s.ambient_dim() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: s.ambient_dim(),
                });
            }
            if s.is_zero() {
                continue;
            }
            dims += s.dim();
            total = total.sum(&s)?;
            kept.insert(key, s);
        }
        if dims != ambient || !total.is_full() {
            return Err(Error::NotAGrading(format!(
                "parts have total dimension {dims} and span dimension {} in C^{ambient}",
                total.dim()
            )));
        }
        Ok(Bigrading {
            ambient,
            parts: kept,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn parts(&self) -> &BTreeMap<Bidegree, Subspace> {
        &self.parts
    }

    pub fn part(&self, p: i32, q: i32) -> Subspace {
        self.parts
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.parts.get(&(p, q)).map_or(0, Subspace::dim)
    }

    /// Sum of the parts whose bidegree satisfies `pred`.
    pub fn sum_where(&self, pred: impl Fn(i32, i32) -> bool) -> Subspace {
        let mut out = Subspace::zero(self.ambient);
        for (&(p, q), s) in &self.parts {
            if pred(p, q) {
                out = out.sum(s).expect("same ambient");
            }
        }
        out
    }

    /// Adapted basis: the canonical bases of the parts in key order, with
    /// the bidegree of every column.
    pub fn frame(&self) -> (Mat, Vec<Bidegree>) {
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for (&key, s) in &self.parts {
            for v in s.basis_vectors() {
                cols.push(v.clone());
                labels.push(key);
            }
        }
        (Mat::from_columns(self.ambient, &cols), labels)
    }

    /// `P diag(f(p, q)) P⁻¹` for the adapted frame `P`.
    pub fn diagonal_operator(&self, f: impl Fn(i32, i32) -> Scalar) -> Mat {
        let (p, labels) = self.frame();
        let d: Vec<Scalar> = labels.iter().map(|&(a, b)| f(a, b)).collect();
        let pinv = p.inverse().expect("a grading frame is invertible");
        &(&p * &Mat::diagonal(&d)) * &pinv
    }

    pub fn projector(&self, p: i32, q: i32) -> Mat {
        self.diagonal_operator(|a, b| if (a, b) == (p, q) { Scalar::one() } else { Scalar::zero() })
    }

    /// `(p, q) ↦ conj(part(q, p))`.
    pub fn conjugate(&self) -> Bigrading {
        Bigrading {
            ambient: self.ambient,
            parts: self.parts.iter().map(|(&(p, q), s)| ((q, p), s.conjugate())).collect(),
        }
    }
}

/// `F^a = V` for `a < lo`, `F^a = steps[a - lo]` on the support, `F^a = 0` from `hi` on.
/// Normalized so that the first stored step is proper and the last nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecFiltration {
    ambient: usize,
    lo: i32,
    steps: Vec<Subspace>,
}

impl DecFiltration {
    /// From explicitly listed consecutive steps; indices below the first
    /// listed one are `V`, above the last are `0`.
    pub fn new(ambient: usize, steps: BTreeMap<i32, Subspace>) -> Result<Self> {
        let Some((&first, _)) = steps.iter().next() else {
            return Err(Error::Parse("empty filtration".into()));
        };
        let mut list = Vec::new();
        for (k, (&a, s)) in steps.iter().enumerate() {
            if a != first + k as i32 {
                return Err(Error::Parse(format!("filtration indices not consecutive at {a}")));
            }
            if s.ambient_dim() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: s.ambient_dim(),
                });
            }
            if let Some(prev) = list.last() {
                if !Subspace::contains_subspace(prev, s) {
                    return Err(Error::NotMonotone(a));
                }
            }
            list.push(s.clone());
        }
        Ok(Self::normalized(ambient, first, list))
    }

    fn normalized(ambient: usize, mut lo: i32, mut steps: Vec<Subspace>) -> Self {
        if ambient == 0 {
            return DecFiltration {
                ambient,
                lo: 0,
                steps: Vec::new(),
            };
        }
        let lead = steps.iter().take_while(|s| s.is_full()).count();
        steps.drain(..lead);
        lo += lead as i32;
        while steps.last().is_some_and(Subspace::is_zero) {
            steps.pop();
        }
        DecFiltration { ambient, lo, steps }
    }

    /// `F^a = V` for `a ≤ level` and `0` above.
    pub fn trivial(ambient: usize, level: i32) -> Self {
        Self::normalized(ambient, level + 1, Vec::new())
    }

    /// Builds `F^a` for `a` in `lo..hi` from a function; outside the range
    /// the filtration is saturated.
    pub fn from_fn(ambient: usize, lo: i32, hi: i32, f: impl Fn(i32) -> Subspace) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(lo - 1, Subspace::full(ambient));
        for a in lo..hi {
            map.insert(a, f(a));
        }
        map.insert(hi, Subspace::zero(ambient));
        Self::new(ambient, map)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// First index where `F^a ≠ V`.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// First index where `F^a = 0`.
    pub fn hi(&self) -> i32 {
        self.lo + self.steps.len() as i32
    }

    pub fn get(&self, a: i32) -> Subspace {
        if a < self.lo {
            Subspace::full(self.ambient)
        } else if a >= self.hi() {
            Subspace::zero(self.ambient)
        } else {
            self.steps[(a - self.lo) as usize].clone()
        }
    }

    /// Indices `lo - 1 ..= hi`, enough to describe the filtration unambiguously.
    pub fn indices(&self) -> std::ops::RangeInclusive<i32> {
        self.lo - 1..=self.hi()
    }

    pub fn conjugate(&self) -> Self {
        DecFiltration {
            ambient: self.ambient,
            lo: self.lo,
            steps: self.steps.iter().map(Subspace::conjugate).collect(),
        }
    }

    /// Adapted grading levels: a basis of `V` with each vector tagged by the
    /// largest `a` with `v ∈ F^a`.
    pub fn adapted_frame(&self) -> (Vec<Vector>, Vec<i32>) {
        let mut vectors = Vec::new();
        let mut levels = Vec::new();
        for b in (self.lo - 1..self.hi()).rev() {
            let upper = self.get(b + 1);
            for v in upper.complement_in(&self.get(b)).expect("nested") {
                vectors.push(v);
                levels.push(b);
            }
        }
        (vectors, levels)
    }
}

/// `W_l = 0` for `l < lo`, `W_l = steps[l - lo]` on the support, `W_l = V` from `hi` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncFiltration {
    ambient: usize,
    lo: i32,
    steps: Vec<Subspace>,
}

impl IncFiltration {
    pub fn new(ambient: usize, steps: BTreeMap<i32, Subspace>) -> Result<Self> {
        let Some((&first, _)) = steps.iter().next() else {
            return Err(Error::Parse("empty filtration".into()));
        };
        let mut list: Vec<Subspace> = Vec::new();
        for (k, (&l, s)) in steps.iter().enumerate() {
            if l != first + k as i32 {
                return Err(Error::Parse(format!("filtration indices not consecutive at {l}")));
            }
            if s.ambient_dim() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: s.ambient_dim(),
                });
            }
            if let Some(prev) = list.last() {
                if !s.contains_subspace(prev) {
                    return Err(Error::NotMonotone(l));
                }
            }
            list.push(s.clone());
        }
        Ok(Self::normalized(ambient, first, list))
    }

    fn normalized(ambient: usize, mut lo: i32, mut steps: Vec<Subspace>) -> Self {
        if ambient == 0 {
            return IncFiltration {
                ambient,
                lo: 0,
                steps: Vec::new(),
            };
        }
        let lead = steps.iter().take_while(|s| s.is_zero()).count();
        steps.drain(..lead);
        lo += lead as i32;
        while steps.last().is_some_and(Subspace::is_full) {
            steps.pop();
        }
        IncFiltration { ambient, lo, steps }
    }

    /// `W_l = 0` for `l < level`, `V` from `level` on.
    pub fn pure(ambient: usize, level: i32) -> Self {
        Self::normalized(ambient, level, Vec::new())
    }

    pub fn from_fn(ambient: usize, lo: i32, hi: i32, f: impl Fn(i32) -> Subspace) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(lo - 1, Subspace::zero(ambient));
        for l in lo..hi {
            map.insert(l, f(l));
        }
        map.insert(hi, Subspace::full(ambient));
        Self::new(ambient, map)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// First index where `W_l ≠ 0`.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// First index where `W_l = V`.
    pub fn hi(&self) -> i32 {
        self.lo + self.steps.len() as i32
    }

    pub fn get(&self, l: i32) -> Subspace {
        if l < self.lo {
            Subspace::zero(self.ambient)
        } else if l >= self.hi() {
            Subspace::full(self.ambient)
        } else {
            self.steps[(l - self.lo) as usize].clone()
        }
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i32> {
        self.lo - 1..=self.hi()
    }

    /// Levels `l` with `gr_l ≠ 0`.
    pub fn jumps(&self) -> Vec<i32> {
        (self.lo..=self.hi())
            .filter(|&l| self.get(l).dim() > self.get(l - 1).dim())
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.steps.iter().all(Subspace::is_real)
    }

    /// `shift(W, s)_j = W_{j+s}`; in particular `W[-k] = shift(W, -k)`.
    pub fn shift(&self, s: i32) -> Self {
        IncFiltration {
            ambient: self.ambient,
            lo: self.lo - s,
            steps: self.steps.clone(),
        }
    }
}

pub fn shift_filtration(w: &IncFiltration, s: i32) -> IncFiltration {
    w.shift(s)
}

/// A pure Hodge structure: a bigrading supported on `p + q = k` with
/// `H^{p,q} = conj(H^{q,p})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeStructure {
    weight: i32,
    grading: Bigrading,
}

impl HodgeStructure {
    pub fn new(weight: i32, grading: Bigrading) -> Result<Self> {
        for (&(p, q), s) in grading.parts() {
            if p + q != weight {
                return Err(Error::NotAGrading(format!("part ({p},{q}) off weight {weight}")));
            }
            if grading.part(q, p) != s.conjugate() {
                return Err(Error::NotAGrading(format!("H^{{{p},{q}}} is not conjugate to H^{{{q},{p}}}")));
            }
        }
        Ok(HodgeStructure { weight, grading })
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn grading(&self) -> &Bigrading {
        &self.grading
    }

    pub fn ambient_dim(&self) -> usize {
        self.grading.ambient_dim()
    }

    pub fn part(&self, p: i32) -> Subspace {
        self.grading.part(p, self.weight - p)
    }

    /// `h^{p, k-p}` for the nonzero parts.
    pub fn hodge_numbers(&self) -> BTreeMap<i32, usize> {
        self.grading.parts().iter().map(|(&(p, _), s)| (p, s.dim())).collect()
    }

    /// `F^a = ⊕_{p ≥ a} H^{p, k-p}`.
    pub fn filtration(&self) -> DecFiltration {
        let n = self.ambient_dim();
        let keys: Vec<i32> = self.grading.parts().keys().map(|&(p, _)| p).collect();
        let lo = keys.first().copied().unwrap_or(0);
        let hi = keys.last().map_or(0, |p| p + 1);
        DecFiltration::from_fn(n, lo, hi, |a| self.grading.sum_where(|p, _| p >= a))
            .expect("sums of a grading are nested")
    }
}

/// `H^{a,k-a} = F^a ∩ conj(F^{k-a})` inside a container, where `f(a)` is
/// `F^a` for `lo ≤ a < hi`, the container below and `0` above.
pub(crate) fn hodge_parts(
    container: &Subspace,
    f: &dyn Fn(i32) -> Subspace,
    lo: i32,
    hi: i32,
    k: i32,
) -> Result<BTreeMap<i32, Subspace>> {
    let n = container.ambient_dim();
    let get = |a: i32| -> Subspace {
        if a < lo {
            container.clone()
        } else if a >= hi {
            Subspace::zero(n)
        } else {
            f(a)
        }
    };
    let from = lo.min(k + 1 - hi) - 1;
    let to = hi.max(k + 1 - lo) + 1;
    for a in from..=to {
        let fa = get(a);
        let cb = get(k - a + 1).conjugate();
        if fa.dim() + cb.dim() != container.dim() || !fa.intersect(&cb)?.is_zero() {
            return Err(Error::Opposedness { index: a });
        }
    }
    let mut parts = BTreeMap::new();
    for a in lo - 1..hi {
        let h = get(a).intersect(&get(k - a).conjugate())?;
        if !h.is_zero() {
            parts.insert(a, h);
        }
    }
    Ok(parts)
}

/// The Hodge structure of weight `k` induced by `F` when
/// `V = F^a ⊕ conj(F^{k-a+1})` for every `a`.
pub fn hs_from_filtration(f: &DecFiltration, k: i32) -> Result<HodgeStructure> {
    let n = f.ambient_dim();
    let parts = hodge_parts(&Subspace::full(n), &|a| f.get(a), f.lo(), f.hi(), k)?;
    let grading = Bigrading::new(n, parts.into_iter().map(|(a, s)| ((a, k - a), s)).collect())?;
    HodgeStructure::new(k, grading)
}

/// `C v = i^{p-q} v` on `H^{p,q}`.
pub fn weil_operator(h: &HodgeStructure) -> Mat {
    h.grading().diagonal_operator(|p, q| Scalar::i_pow((p - q) as i64))
}

/// Checks the polarization conditions for `(H, Q)`.
pub fn verify_phs(h: &HodgeStructure, q: &BilForm) -> Result<Report> {
    let n = h.ambient_dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch(format!("form on C^{} for a structure on C^{n}", q.dim())));
    }
    let k = h.weight();
    let mut r = Report::new(format!("polarized Hodge structure of weight {k}"));
    let odd = k.rem_euclid(2) == 1;
    r.check(
        "form parity",
        q.is_odd() == odd,
        if q.is_odd() == odd { String::new() } else { format!("form parity does not match weight {k}") },
    );
    let parts: Vec<(i32, Vec<Vector>)> = h
        .grading()
        .parts()
        .iter()
        .map(|(&(p, _), s)| (p, s.basis_vectors().to_vec()))
        .collect();
    let mut bad = Vec::new();
    for (a, ua) in &parts {
        for (b, ub) in &parts {
            if a + b != k && !q.gram(ua, ub).is_zero() {
                bad.push(format!("Q(H^{{{a},{}}}, H^{{{b},{}}}) ≠ 0", k - a, k - b));
            }
        }
    }
    r.check("orthogonality", bad.is_empty(), bad.join("; "));
    let c = weil_operator(h);
    let (frame, _) = h.grading().frame();
    let us = frame.columns();
    let cus: Vec<Vector> = us.iter().map(|u| c.mul_vec(u)).collect();
    let conj_us: Vec<Vector> = us.iter().map(|u| matrix::conj_vec(u)).collect();
    let herm = q.gram(&cus, &conj_us);
    match forms::hermitian_positive(&herm) {
        Ok(true) => r.pass("positivity"),
        Ok(false) => r.check("positivity", false, "Q(C·, conj ·) is not positive definite"),
        Err(_) => r.check("positivity", false, "Q(C·, conj ·) is not Hermitian"),
    }
    Ok(r)
}

/// `F^a gl(V) = {X : X F^b ⊆ F^{a+b}}` in flattened coordinates.
pub fn filtration_of_gl(f: &DecFiltration) -> DecFiltration {
    let n = f.ambient_dim();
    let (vectors, levels) = f.adapted_frame();
    let p = Mat::from_columns(n, &vectors);
    let pinv = p.inverse().expect("adapted frame is a basis");
    let span = f.hi() - f.lo() + 1;
    let elementary = |r: usize, c: usize| -> Vector {
        // P E_rc P⁻¹ = (column r of P)(row c of P⁻¹)
        let col = p.column(r);
        let row = pinv.row(c);
        let mut out = Vec::with_capacity(n * n);
        for x in &col {
            for y in row {
                out.push(x * y);
            }
        }
        out
    };
    DecFiltration::from_fn(n * n, -span + 1, span + 1, |a| {
        let mut gens = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if levels[r] >= a + levels[c] {
                    gens.push(elementary(r, c));
                }
            }
        }
        Subspace::span(n * n, gens)
    })
    .expect("nested by construction")
}

/// `X F^b ⊆ F^{a+b}` for all `b`.
pub fn in_filtration_of_gl(x: &Mat, f: &DecFiltration, a: i32) -> bool {
    (f.lo() - 1..=f.hi()).all(|b| {
        let target = f.get(a + b);
        f.get(b).basis_vectors().iter().all(|v| target.contains(&x.mul_vec(v)))
    })
}

/// `F^a g = F^a gl(V) ∩ g` for the isometry algebra of a form.
#[derive(Clone, Debug)]
pub struct LieFiltration {
    algebra: Subspace,
    gl: DecFiltration,
}

impl LieFiltration {
    pub fn algebra(&self) -> &Subspace {
        &self.algebra
    }

    pub fn of_gl(&self) -> &DecFiltration {
        &self.gl
    }

    pub fn get(&self, a: i32) -> Subspace {
        self.algebra.intersect(&self.gl.get(a)).expect("same ambient")
    }

    pub fn contains(&self, x: &Mat, a: i32) -> bool {
        let v = x.flatten();
        self.algebra.contains(&v) && self.gl.get(a).contains(&v)
    }
}

pub fn filtration_of_g(f: &DecFiltration, q: &BilForm) -> Result<LieFiltration> {
    if q.dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch("form and filtration".into()));
    }
    Ok(LieFiltration {
        algebra: IsometryAlgebra::new(q).subspace(),
        gl: filtration_of_gl(f),
    })
}

/// `W(N)_l = Σ_{i - j = l} ker N^{i+1} ∩ im N^j`, with both defining
/// properties re-checked.
pub fn weight_filtration(n: &Mat) -> Result<IncFiltration> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch("weight filtration of a non-square matrix".into()));
    }
    let order = n.nilpotency_order().ok_or(Error::NotNilpotent)? as i32;
    let dim = n.rows();
    let m = (order - 1).max(0);
    let mut powers = vec![Mat::identity(dim)];
    for _ in 0..=m {
        let next = powers.last().unwrap() * n;
        powers.push(next);
    }
    let kernels: Vec<Subspace> = powers.iter().map(subspace::kernel).collect();
    let images: Vec<Subspace> = powers.iter().map(subspace::image).collect();
    let w = IncFiltration::from_fn(dim, -m, m, |l| {
        let mut acc = Subspace::zero(dim);
        for j in 0..=m {
            let i = l + j;
            if i < 0 || i > m {
                continue;
            }
            let piece = kernels[(i + 1) as usize].intersect(&images[j as usize]).expect("same ambient");
            acc = acc.sum(&piece).expect("same ambient");
        }
        acc
    })?;
    check_weight_filtration(n, &w).map_err(Error::Postcondition)?;
    Ok(w)
}

/// `N W_l ⊆ W_{l-2}` and `N^l : gr_l → gr_{-l}` bijective for `l ≥ 0`.
pub fn check_weight_filtration(n: &Mat, w: &IncFiltration) -> std::result::Result<(), String> {
    let (lo, hi) = (w.lo(), w.hi());
    for l in lo..=hi + 1 {
        let image = w.get(l).map(n).map_err(|e| e.to_string())?;
        if !w.get(l - 2).contains_subspace(&image) {
            return Err(format!("N(W_{l}) is not contained in W_{}", l - 2));
        }
    }
    let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as i32 + 1;
    let mut power = Mat::identity(n.rows());
    for l in 0..=reach {
        let gr_hi = w.get(l).dim() - w.get(l - 1).dim();
        let gr_lo = w.get(-l).dim() - w.get(-l - 1).dim();
        if gr_hi != gr_lo {
            return Err(format!("dim gr_{l} = {gr_hi} but dim gr_{} = {gr_lo}", -l));
        }
        // kernel of the induced map is W_l ∩ (N^l)⁻¹ W_{-l-1} modulo W_{l-1}
        let pre = w.get(-l - 1).preimage(&power).map_err(|e| e.to_string())?;
        if w.get(l).intersect(&pre).map_err(|e| e.to_string())? != w.get(l - 1) {
            return Err(format!("N^{l} is not injective on gr_{l}"));
        }
        power = &power * n;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vector {
        matrix::unit_vector(n, i)
    }

    fn v(entries: &[Scalar]) -> Vector {
        entries.to_vec()
    }

    fn dec(n: usize, steps: Vec<(i32, Subspace)>) -> DecFiltration {
        DecFiltration::new(n, steps.into_iter().collect()).unwrap()
    }

    fn weight_one_example(sign: i64) -> HodgeStructure {
        let f1 = Subspace::span(2, [v(&[Scalar::gaussian(0, -sign), 1.into()])]);
        hs_from_filtration(&dec(2, vec![(0, Subspace::full(2)), (1, f1), (2, Subspace::zero(2))]), 1).unwrap()
    }

    #[test]
    fn filtration_normal_form() {
        let a = dec(3, vec![(-1, Subspace::full(3)), (0, Subspace::full(3)), (1, Subspace::span(3, [e(3, 0)])), (2, Subspace::zero(3))]);
        assert_eq!((a.lo(), a.hi()), (1, 2));
        let b = dec(3, vec![(1, Subspace::span(3, [e(3, 0)]))]);
        assert_eq!(a, b);
        assert_eq!(a.get(-5), Subspace::full(3));
        assert!(a.get(7).is_zero());
        let bad = DecFiltration::new(3, [(0, Subspace::span(3, [e(3, 0)])), (1, Subspace::full(3))].into());
        assert_eq!(bad, Err(Error::NotMonotone(1)));
    }

    #[test]
    fn pure_weight_zero() {
        let h = hs_from_filtration(&DecFiltration::trivial(3, 0), 0).unwrap();
        assert_eq!(h.part(0), Subspace::full(3));
        assert_eq!(weil_operator(&h), Mat::identity(3));
    }

    #[test]
    fn weight_one_line() {
        let h = weight_one_example(1);
        assert_eq!(h.part(1), Subspace::span(2, [v(&[Scalar::gaussian(0, -1), 1.into()])]));
        assert_eq!(h.part(0), Subspace::span(2, [v(&[Scalar::i(), 1.into()])]));
        let c = weil_operator(&h);
        assert!(c.is_real());
        assert_eq!(&c * &c, -&Mat::identity(2));
        let q = BilForm::new(Mat::from_ints(&[[0, 1], [-1, 0]]), 1).unwrap();
        assert!(verify_phs(&h, &q).unwrap().passed());
        let r = verify_phs(&weight_one_example(-1), &q).unwrap();
        assert!(!r.find("positivity").unwrap().passed);
        assert!(r.find("orthogonality").unwrap().passed);
    }

    #[test]
    fn real_line_is_not_opposed() {
        let f = dec(2, vec![(1, Subspace::span(2, [e(2, 0)]))]);
        assert_eq!(hs_from_filtration(&f, 1).unwrap_err(), Error::Opposedness { index: 1 });
    }

    #[test]
    fn weight_filtration_examples() {
        let w = weight_filtration(&Mat::zeros(3, 3)).unwrap();
        assert!(w.get(-1).is_zero());
        assert!(w.get(0).is_full());

        let w2 = weight_filtration(&Mat::from_ints(&[[0, 1], [0, 0]])).unwrap();
        let e1 = Subspace::span(2, [e(2, 0)]);
        assert!(w2.get(-2).is_zero());
        assert_eq!(w2.get(-1), e1);
        assert_eq!(w2.get(0), e1);
        assert!(w2.get(1).is_full());

        let w3 = weight_filtration(&Mat::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]])).unwrap();
        assert!(w3.get(-3).is_zero());
        assert_eq!(w3.get(-2), Subspace::span(3, [e(3, 0)]));
        assert_eq!(w3.get(-1), Subspace::span(3, [e(3, 0)]));
        assert_eq!(w3.get(0), Subspace::span(3, [e(3, 0), e(3, 1)]));
        assert_eq!(w3.get(1), Subspace::span(3, [e(3, 0), e(3, 1)]));
        assert!(w3.get(2).is_full());

        assert_eq!(weight_filtration(&Mat::identity(2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn shifting() {
        let w = weight_filtration(&Mat::from_ints(&[[0, 1], [0, 0]])).unwrap();
        assert_eq!(shift_filtration(&w, 0), w);
        assert_eq!(shift_filtration(&shift_filtration(&w, 3), -3), w);
        let s = shift_filtration(&w, -1);
        assert!(s.get(-1).is_zero());
        assert_eq!(s.get(0).dim(), 1);
        assert_eq!(s.get(1).dim(), 1);
        assert!(s.get(2).is_full());
        assert_eq!(s.jumps(), vec![0, 2]);
    }

    #[test]
    fn lie_filtration() {
        let q = BilForm::new(Mat::from_ints(&[[0, 1], [-1, 0]]), 1).unwrap();
        let trivial = DecFiltration::trivial(2, 0);
        let fg = filtration_of_g(&trivial, &q).unwrap();
        assert_eq!(fg.get(0), *fg.algebra());
        assert_eq!(fg.get(-1), *fg.algebra());
        assert!(fg.get(1).is_zero());

        // F^1 = span{e1}: the raising map e2 ↦ e1 lies in F^1
        let f = dec(2, vec![(1, Subspace::span(2, [e(2, 0)]))]);
        let x = Mat::from_ints(&[[0, 1], [0, 0]]);
        let fg = filtration_of_g(&f, &q).unwrap();
        assert!(fg.contains(&x, 1));
        assert!(!fg.contains(&x, 2));
        assert!(!fg.contains(&x.transpose(), 0));
        assert!(fg.contains(&x.transpose(), -1));
        for a in -2..3 {
            let gl = filtration_of_gl(&f).get(a);
            for m in [&x, &x.transpose(), &Mat::identity(2)] {
                assert_eq!(gl.contains(&m.flatten()), in_filtration_of_gl(m, &f, a), "a = {a}");
            }
        }
    }
}
