//! Mixed Hodge structures, the Deligne bigrading, polarized mixed Hodge
//! structures and the induced bigrading of the Lie algebra.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::filtration::{self, Bidegree, Bigrading, DecFiltration, IncFiltration};
use crate::forms::{self, BilForm};
use crate::lie::{self, IsometryAlgebra};
use crate::matrix::{self, Mat, Vector};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::subspace::{self, Frame, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedHodge {
    w: IncFiltration,
    f: DecFiltration,
}

impl MixedHodge {
    pub fn new(w: IncFiltration, f: DecFiltration) -> Result<Self> {
        if w.ambient_dim() != f.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: w.ambient_dim(),
                right: f.ambient_dim(),
            });
        }
        Ok(MixedHodge { w, f })
    }

    /// `W_l = ⊕_{p+q ≤ l} J^{p,q}` and `F^p = ⊕_{a ≥ p} J^{a,b}`.
    pub fn from_bigrading(j: &Bigrading) -> Self {
        let n = j.ambient_dim();
        let keys: Vec<Bidegree> = j.parts().keys().copied().collect();
        let (wl, wh) = span_of(keys.iter().map(|&(p, q)| p + q));
        let (fl, fh) = span_of(keys.iter().map(|&(p, _)| p));
        let w = IncFiltration::from_fn(n, wl, wh, |l| j.sum_where(|p, q| p + q <= l)).expect("nested");
        let f = DecFiltration::from_fn(n, fl + 1, fh + 1, |a| j.sum_where(|p, _| p >= a)).expect("nested");
        MixedHodge { w, f }
    }

    pub fn w(&self) -> &IncFiltration {
        &self.w
    }

    pub fn f(&self) -> &DecFiltration {
        &self.f
    }

    pub fn ambient_dim(&self) -> usize {
        self.w.ambient_dim()
    }
}

fn span_of(it: impl Iterator<Item = i32>) -> (i32, i32) {
    let v: Vec<i32> = it.collect();
    (v.iter().copied().min().unwrap_or(0), v.iter().copied().max().unwrap_or(0))
}

/// `gr_l^W`, realized by a real pivot complement `C` of `W_{l-1}` in `W_l`.
/// Coordinates of `v ∈ W_l` are its `C`-coordinates in the frame `[C | W_{l-1}]`.
#[derive(Clone, Debug)]
pub(crate) struct Graded {
    complement: Vec<Vector>,
    frame: Frame,
    top: Subspace,
}

impl Graded {
    pub fn new(w: &IncFiltration, l: i32) -> Result<Self> {
        let top = w.get(l);
        let below = w.get(l - 1);
        let complement = below.complement_in(&top)?;
        let mut vectors = complement.clone();
        vectors.extend(below.basis_vectors().iter().cloned());
        let frame = Frame::new(w.ambient_dim(), vectors)?;
        Ok(Graded {
            complement,
            frame,
            top,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn coords(&self, v: &[Scalar]) -> Vector {
        let mut c = self.frame.coords(v);
        c.truncate(self.dim());
        c
    }

    /// The lift `Σ c_i C_i`.
    pub fn lift(&self, c: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.frame.ambient_dim()];
        for (ci, v) in c.iter().zip(&self.complement) {
            if !ci.is_zero() {
                out = matrix::axpy(&out, ci, v);
            }
        }
        out
    }

    /// `(S ∩ W_l + W_{l-1}) / W_{l-1}` in graded coordinates.
    pub fn image(&self, s: &Subspace) -> Subspace {
        let inside = s.intersect(&self.top).expect("same ambient");
        Subspace::span(self.dim(), inside.basis_vectors().iter().map(|v| self.coords(v)))
    }
}

/// Induced Hodge parts of weight `l` on `gr_l`, in graded coordinates.
fn graded_hodge_parts(m: &MixedHodge, gr: &Graded, container: &Subspace, l: i32) -> Result<BTreeMap<i32, Subspace>> {
    let f = m.f();
    let steps: BTreeMap<i32, Subspace> = (f.lo()..f.hi())
        .map(|a| (a, gr.image(&f.get(a)).intersect(container).expect("same ambient")))
        .collect();
    let lookup = |a: i32| steps.get(&a).cloned().unwrap_or_else(|| Subspace::zero(gr.dim()));
    filtration::hodge_parts(container, &lookup, f.lo(), f.hi(), l)
}

/// For every nonzero `gr_l^W`, checks that `F` induces a Hodge structure of weight `l`.
pub fn verify_mhs(m: &MixedHodge) -> Result<Report> {
    let mut r = Report::new("mixed Hodge structure");
    r.check(
        "W real",
        m.w().is_real(),
        if m.w().is_real() { "" } else { "W is not defined over R" },
    );
    let mut levels = Vec::new();
    for l in m.w().jumps() {
        let gr = Graded::new(m.w(), l)?;
        let name = format!("gr_{l}");
        match graded_hodge_parts(m, &gr, &Subspace::full(gr.dim()), l) {
            Ok(parts) => {
                let total: usize = parts.values().map(Subspace::dim).sum();
                r.check(&name, total == gr.dim(), "");
            }
            Err(Error::Opposedness { index }) => {
                r.check(&name, false, format!("F^{index} is not opposed to its conjugate on gr_{l}"))
            }
            Err(e) => return Err(e),
        }
        levels.push(json!({"level": l, "dim": gr.dim()}));
    }
    r.set("levels", json!(levels));
    Ok(r)
}

/// The canonical bigrading of a mixed Hodge structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneSplit {
    pub grading: Bigrading,
}

impl DeligneSplit {
    pub fn part(&self, p: i32, q: i32) -> Subspace {
        self.grading.part(p, q)
    }
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + Σ_{j≥1} conj F^{q-j} ∩ W_{p+q-j-1})`,
/// with the splitting identities and the conjugation congruence checked.
pub fn deligne_bigrading(m: &MixedHodge) -> Result<DeligneSplit> {
    let report = verify_mhs(m)?;
    if !report.passed() {
        let why: Vec<String> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(Error::NotMixedHodge(why.join("; ")));
    }
    let n = m.ambient_dim();
    let (w, f) = (m.w(), m.f());
    let cf = f.conjugate();
    let mut parts = BTreeMap::new();
    for p in f.lo() - 1..f.hi() {
        for q in f.lo() - 1..f.hi() {
            let l = p + q;
            if l < w.lo() || l > w.hi() {
                continue;
            }
            let head = f.get(p).intersect(&w.get(l))?;
            if head.is_zero() {
                continue;
            }
            let mut tail = cf.get(q).intersect(&w.get(l))?;
            let last = (q - f.lo() + 1).max(1);
            for j in 1..=last {
                let wj = w.get(l - j - 1);
                if wj.is_zero() {
                    break;
                }
                tail = tail.sum(&cf.get(q - j).intersect(&wj)?)?;
            }
            let part = head.intersect(&tail)?;
            if !part.is_zero() {
                parts.insert((p, q), part);
            }
        }
    }
    let grading = Bigrading::new(n, parts).map_err(|e| Error::Postcondition(format!("Deligne parts: {e}")))?;
    check_deligne_split(m, &grading).map_err(Error::Postcondition)?;
    Ok(DeligneSplit { grading })
}

/// `W_l = ⊕_{p+q≤l} I^{p,q}`, `F^p = ⊕_{a≥p} I^{a,b}` and
/// `I^{p,q} ≡ conj(I^{q,p})` modulo `⊕_{a<p, b<q} I^{a,b}`.
pub fn check_deligne_split(m: &MixedHodge, i: &Bigrading) -> std::result::Result<(), String> {
    for l in m.w().indices() {
        if i.sum_where(|p, q| p + q <= l) != m.w().get(l) {
            return Err(format!("the bigrading does not split W_{l}"));
        }
    }
    for a in m.f().indices() {
        if i.sum_where(|p, _| p >= a) != m.f().get(a) {
            return Err(format!("the bigrading does not split F^{a}"));
        }
    }
    let mut keys: Vec<Bidegree> = i.parts().keys().copied().collect();
    keys.extend(i.parts().keys().map(|&(p, q)| (q, p)));
    keys.sort();
    keys.dedup();
    for (p, q) in keys {
        let lower = i.sum_where(|a, b| a < p && b < q);
        let lhs = i.part(p, q).sum(&lower).map_err(|e| e.to_string())?;
        let rhs = i.part(q, p).conjugate().sum(&lower).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("I^{{{p},{q}}} is not congruent to conj I^{{{q},{p}}}"));
        }
    }
    Ok(())
}

/// `I^{a,b} g = {X ∈ g : X I^{p,q} ⊆ I^{p+a,q+b}}` in flattened coordinates.
#[derive(Clone, Debug)]
pub struct LieBigrading {
    dim_v: usize,
    algebra: Subspace,
    parts: BTreeMap<Bidegree, Subspace>,
}

impl LieBigrading {
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn algebra(&self) -> &Subspace {
        &self.algebra
    }

    pub fn parts(&self) -> &BTreeMap<Bidegree, Subspace> {
        &self.parts
    }

    pub fn part(&self, a: i32, b: i32) -> Subspace {
        self.parts
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim_v * self.dim_v))
    }

    fn sum_where(&self, pred: impl Fn(i32, i32) -> bool) -> Subspace {
        let mut out = Subspace::zero(self.dim_v * self.dim_v);
        for (&(a, b), s) in &self.parts {
            if pred(a, b) {
                out = out.sum(s).expect("same ambient");
            }
        }
        out
    }
}

pub fn lie_bigrading(split: &DeligneSplit, q: &BilForm) -> Result<LieBigrading> {
    let n = split.grading.ambient_dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch("form and bigrading".into()));
    }
    let g = IsometryAlgebra::new(q);
    let algebra = g.subspace();
    let (p, labels) = split.grading.frame();
    let pinv = p.inverse()?;
    let shift = |r: usize, c: usize| (labels[r].0 - labels[c].0, labels[r].1 - labels[c].1);

    let mut comps: BTreeMap<Bidegree, Vec<Vector>> = BTreeMap::new();
    let mut closed = true;
    'outer: for x in g.basis() {
        let y = &(&pinv * x) * &p;
        let mut blocks: BTreeMap<Bidegree, Mat> = BTreeMap::new();
        for r in 0..n {
            for c in 0..n {
                if !y[(r, c)].is_zero() {
                    blocks.entry(shift(r, c)).or_insert_with(|| Mat::zeros(n, n))[(r, c)] = y[(r, c)].clone();
                }
            }
        }
        for (key, b) in blocks {
            let comp = &(&p * &b) * &pinv;
            if !forms::in_isometry_algebra(&comp, q)? {
                closed = false;
                break 'outer;
            }
            comps.entry(key).or_default().push(comp.flatten());
        }
    }
    let parts: BTreeMap<Bidegree, Subspace> = if closed {
        comps
            .into_iter()
            .map(|(k, vs)| (k, Subspace::span(n * n, vs)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    } else {
        // the grading is not Q-compatible: intersect g with each block directly
        let mut blocks: BTreeMap<Bidegree, Vec<Vector>> = BTreeMap::new();
        for r in 0..n {
            for c in 0..n {
                let e = &(&p * &Mat::unit(n, n, r, c)) * &pinv;
                blocks.entry(shift(r, c)).or_default().push(e.flatten());
            }
        }
        let mut out = BTreeMap::new();
        for (k, vs) in blocks {
            let s = Subspace::span(n * n, vs).intersect(&algebra)?;
            if !s.is_zero() {
                out.insert(k, s);
            }
        }
        out
    };
    Ok(LieBigrading {
        dim_v: n,
        algebra,
        parts,
    })
}

/// `p_a = ⊕_q I^{a,q} g`.
pub fn p_part(lb: &LieBigrading, a: i32) -> Subspace {
    lb.sum_where(|x, _| x == a)
}

/// `g_- = ⊕_{a ≤ -1} p_a`.
pub fn g_minus(lb: &LieBigrading) -> Subspace {
    lb.sum_where(|x, _| x <= -1)
}

/// Data of a candidate polarized mixed Hodge structure.
#[derive(Clone, Debug)]
pub struct PmhsData {
    pub weight: i32,
    pub w: IncFiltration,
    pub f: DecFiltration,
    pub n: Mat,
    pub q: BilForm,
}

pub fn verify_pmhs(d: &PmhsData) -> Result<Report> {
    let dim = d.q.dim();
    if d.w.ambient_dim() != dim || d.f.ambient_dim() != dim || d.n.rows() != dim || d.n.cols() != dim {
        return Err(Error::DimensionMismatch("PMHS data of inconsistent sizes".into()));
    }
    let k = d.weight;
    let mut r = Report::new(format!("polarized mixed Hodge structure of weight {k}"));

    r.check("N real", d.n.is_real(), "");
    let in_g = forms::in_isometry_algebra(&d.n, &d.q)?;
    r.check("N in g", in_g, if in_g { "" } else { "N is not infinitesimally Q-isometric" });
    r.check(
        "form parity",
        d.q.is_odd() == (k.rem_euclid(2) == 1),
        "",
    );

    let nil = k >= 0 && d.n.pow((k + 1) as u32).is_zero();
    r.check("N^(k+1) = 0", nil, if nil { String::new() } else { format!("N^{} ≠ 0", k + 1) });

    let w_ok = match filtration::weight_filtration(&d.n) {
        Ok(wn) => {
            let ok = wn.shift(-k) == d.w;
            r.check("W = W(N)[-k]", ok, if ok { "" } else { "W differs from the shifted weight filtration of N" });
            ok
        }
        Err(e) => {
            r.check("W = W(N)[-k]", false, e.to_string());
            false
        }
    };

    let f = &d.f;
    let from = (f.lo() - 1).min(k + 1 - f.hi());
    let to = f.hi().max(k + 2 - f.lo());
    let mut iso_bad = Vec::new();
    for a in from..=to {
        let fa = f.get(a);
        let fb = f.get(k - a + 1);
        if fa.is_zero() || fb.is_zero() {
            continue;
        }
        if !d.q.gram(fa.basis_vectors(), fb.basis_vectors()).is_zero() {
            iso_bad.push(format!("Q(F^{a}, F^{}) ≠ 0", k - a + 1));
        }
    }
    r.check("Q(F^a, F^(k-a+1)) = 0", iso_bad.is_empty(), iso_bad.join("; "));

    let horizontal = filtration::in_filtration_of_gl(&d.n, f, -1);
    r.check("N in F^-1 g", horizontal, "");

    let m = MixedHodge::new(d.w.clone(), d.f.clone())?;
    let mhs = verify_mhs(&m)?;
    r.absorb("mhs: ", &mhs);

    if !(w_ok && nil && mhs.passed()) {
        r.check(
            "primitive positivity",
            false,
            "not evaluated: the weight filtration or the mixed Hodge structure is wrong",
        );
        return Ok(r);
    }

    let mut levels = Vec::new();
    let mut power = Mat::identity(dim);
    for l in 0..=(d.w.hi() - k).max(0) {
        let gr = Graded::new(&d.w, k + l)?;
        let next = &power * &d.n;
        if gr.dim() > 0 {
            let target = d.w.get(k - l - 3).annihilator();
            let images: Vec<Vector> = gr.complement.iter().map(|c| next.mul_vec(c)).collect();
            let rows = target.basis_vectors().iter().map(|alpha| {
                images.iter().map(|im| matrix::dot(alpha, im)).collect::<Vector>()
            });
            let prim = subspace::kernel_of_rows(gr.dim(), rows);
            levels.push(json!({"l": l, "graded_dim": gr.dim(), "primitive_dim": prim.dim()}));
            if !prim.is_zero() {
                let name = format!("primitive positivity l={l}");
                match graded_hodge_parts(&m, &gr, &prim, k + l) {
                    Err(e) => r.check(&name, false, e.to_string()),
                    Ok(parts) => {
                        let mut lifts = Vec::new();
                        let mut phases = Vec::new();
                        for (&p, s) in &parts {
                            for c in s.basis_vectors() {
                                lifts.push(gr.lift(c));
                                phases.push(Scalar::i_pow((2 * p - k - l) as i64));
                            }
                        }
                        let targets: Vec<Vector> = lifts.iter().map(|u| power.mul_vec(&matrix::conj_vec(u))).collect();
                        let mut h = d.q.gram(&lifts, &targets);
                        for (i, ph) in phases.iter().enumerate() {
                            for j in 0..h.cols() {
                                h[(i, j)] = &h[(i, j)] * ph;
                            }
                        }
                        match forms::hermitian_positive(&h) {
                            Ok(true) => r.pass(&name),
                            Ok(false) => r.check(&name, false, "Q(C·, N^l conj ·) is not positive definite"),
                            Err(_) => r.check(&name, false, "Q(C·, N^l conj ·) is not Hermitian"),
                        }
                    }
                }
            }
        }
        power = next;
    }
    r.set("levels", json!(levels));
    Ok(r)
}

/// Basis matrices of `p_{-1}` for a polarized mixed Hodge structure.
pub fn p_minus_one(m: &MixedHodge, q: &BilForm) -> Result<Subspace> {
    let split = deligne_bigrading(m)?;
    Ok(p_part(&lie_bigrading(&split, q)?, -1))
}

pub fn basis_matrices(dim_v: usize, s: &Subspace) -> Vec<Mat> {
    lie::unflatten_basis(dim_v, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::hs_from_filtration;

    fn e(n: usize, i: usize) -> Vector {
        matrix::unit_vector(n, i)
    }

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::span(n, idx.iter().map(|&i| e(n, i)))
    }

    /// Weight 1 Hodge–Tate tower on C^2: `J^{0,0} = e1`, `J^{1,1} = e2`, `N e2 = e1`.
    fn tate_k1() -> (MixedHodge, BilForm, Mat) {
        let j = Bigrading::new(2, [((0, 0), span(2, &[0])), ((1, 1), span(2, &[1]))].into()).unwrap();
        let q = BilForm::new(Mat::from_ints(&[[0, -1], [1, 0]]), 1).unwrap();
        let n = Mat::from_ints(&[[0, 1], [0, 0]]);
        (MixedHodge::from_bigrading(&j), q, n)
    }

    #[test]
    fn pure_structures_are_mixed() {
        let f1 = Subspace::span(2, [vec![Scalar::gaussian(0, -1), 1.into()]]);
        let f = DecFiltration::new(2, [(1, f1)].into()).unwrap();
        let h = hs_from_filtration(&f, 1).unwrap();
        let m = MixedHodge::new(IncFiltration::pure(2, 1), f).unwrap();
        assert!(verify_mhs(&m).unwrap().passed());
        let split = deligne_bigrading(&m).unwrap();
        assert_eq!(&split.grading, h.grading());
    }

    #[test]
    fn tate_tower_weight_one() {
        let (m, q, n) = tate_k1();
        assert!(verify_mhs(&m).unwrap().passed());
        let split = deligne_bigrading(&m).unwrap();
        assert_eq!(split.part(0, 0), span(2, &[0]));
        assert_eq!(split.part(1, 1), span(2, &[1]));
        let data = PmhsData {
            weight: 1,
            w: m.w().clone(),
            f: m.f().clone(),
            n: n.clone(),
            q: q.clone(),
        };
        let r = verify_pmhs(&data).unwrap();
        assert!(r.passed(), "{:?}", r);
        let neg = PmhsData { n: -&n, ..data };
        let r = verify_pmhs(&neg).unwrap();
        assert!(!r.find("primitive positivity l=1").unwrap().passed);

        let lb = lie_bigrading(&split, &q).unwrap();
        assert_eq!(p_part(&lb, -1), lie::flat_span(2, std::slice::from_ref(&n)));
        assert_eq!(lb.parts().keys().copied().collect::<Vec<_>>(), vec![(-1, -1), (0, 0), (1, 1)]);
        assert!(!p_part(&lb, 0).contains(&Mat::identity(2).flatten()));
        assert!(p_part(&lb, -2).is_zero());
    }

    #[test]
    fn incompatible_filtration_fails() {
        // W of a 2x2 Jordan block with F^1 = ker N = W_{-1}: gr_{-1} and gr_1 are
        // one-dimensional, but F^1 would need weight 2 on gr_{-1}
        let n = Mat::from_ints(&[[0, 1], [0, 0]]);
        let w = filtration::weight_filtration(&n).unwrap();
        let f = DecFiltration::new(2, [(1, span(2, &[0]))].into()).unwrap();
        let m = MixedHodge::new(w, f).unwrap();
        let r = verify_mhs(&m).unwrap();
        assert!(!r.passed());
        assert!(matches!(deligne_bigrading(&m), Err(Error::NotMixedHodge(_))));
    }

    #[test]
    fn weight_zero_pure() {
        let q = BilForm::new(Mat::identity(2), 0).unwrap();
        let data = PmhsData {
            weight: 0,
            w: IncFiltration::pure(2, 0),
            f: DecFiltration::trivial(2, 0),
            n: Mat::zeros(2, 2),
            q,
        };
        assert!(verify_pmhs(&data).unwrap().passed());
    }

    #[test]
    fn non_real_split_has_congruence() {
        // I^{1,1} = span(e1 + i e2), I^{0,0} = span(e2): a non-R-split MHS
        let v = vec![Scalar::one(), Scalar::i()];
        let j = Bigrading::new(2, [((0, 0), span(2, &[1])), ((1, 1), Subspace::span(2, [v]))].into()).unwrap();
        let m = MixedHodge::from_bigrading(&j);
        let split = deligne_bigrading(&m).unwrap();
        assert_eq!(split.grading, j);
        check_deligne_split(&m, &j).unwrap();
    }
}
