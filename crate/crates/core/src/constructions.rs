//! Builders: split polarized mixed Hodge structures from dimension tables,
//! maximal IVIs in weight two, Hodge–Tate towers, the symmetric-matrix
//! families, dimension formulas and the weight-two catalog with
//! `h^{2,0} = h^{1,1} = 3`.

use std::collections::BTreeMap;

use crate::asymptotic::{self, Ivi, NilpotentOrbit};
use crate::error::{Error, Result};
use crate::filtration::{Bidegree, Bigrading};
use crate::forms::BilForm;
use crate::lie;
use crate::matrix::Mat;
use crate::mixed::{self, MixedHodge, PmhsData};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Dimensions `j^{a,b}` of a bigrading of weight `k`, closed under
/// `(a,b) ↦ (b,a)` and `(a,b) ↦ (k-b,k-a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    weight: i32,
    j: BTreeMap<Bidegree, usize>,
}

impl DimTable {
    /// Fills in the entries forced by symmetry; conflicting entries, entries
    /// outside `[0, k]²` and tables with `j^{a+1,b+1} > j^{a,b}` for
    /// `a + b ≥ k` are rejected.
    pub fn new(weight: i32, given: &[(Bidegree, usize)]) -> Result<Self> {
        if weight < 0 {
            return Err(Error::Infeasible(format!("negative weight {weight}")));
        }
        let k = weight;
        let mut j: BTreeMap<Bidegree, usize> = BTreeMap::new();
        for &((a, b), d) in given {
            if !(0..=k).contains(&a) || !(0..=k).contains(&b) {
                return Err(Error::Infeasible(format!("j^{{{a},{b}}} outside the weight {k} range")));
            }
            for key in [(a, b), (b, a), (k - b, k - a), (k - a, k - b)] {
                match j.get(&key) {
                    Some(&old) if old != d => {
                        return Err(Error::Infeasible(format!(
                            "j^{{{},{}}} must equal both {old} and {d}",
                            key.0, key.1
                        )))
                    }
                    _ => {
                        j.insert(key, d);
                    }
                }
            }
        }
        j.retain(|_, d| *d > 0);
        let table = DimTable { weight, j };
        for &(a, b) in table.j.keys() {
            if a + b >= k && table.get(a + 1, b + 1) > table.get(a, b) {
                return Err(Error::Infeasible(format!(
                    "j^{{{},{}}} > j^{{{a},{b}}}",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(table)
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn get(&self, a: i32, b: i32) -> usize {
        self.j.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Bidegree, usize> {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.values().sum()
    }

    /// `h^{p,k-p} = Σ_b j^{p,b}` for `p = 0..=k`.
    pub fn hodge_numbers(&self) -> Vec<usize> {
        (0..=self.weight)
            .map(|p| self.j.iter().filter(|((a, _), _)| *a == p).map(|(_, d)| d).sum())
            .collect()
    }

    /// Multiplicity of primitive type `(a, b)`, `a + b ≥ k`.
    pub fn primitive(&self, a: i32, b: i32) -> usize {
        self.get(a, b) - self.get(a + 1, b + 1)
    }
}

/// One vector of the standard complex basis of a split structure: step `t`
/// of copy `copy` of the string generated by primitive type `kind`; for
/// `kind = (a, b)` with `a ≠ b` there is also the conjugate string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub kind: Bidegree,
    pub copy: usize,
    pub step: usize,
    pub conjugate: bool,
    pub bidegree: Bidegree,
}

/// A polarized mixed Hodge structure split over `R`, with its standard basis.
///
/// For a primitive type `(a, b)` of level `l = a + b - k` the string
/// `u_0 ↦ u_1 ↦ … ↦ u_l` under `N` satisfies `Q(u_t, conj u_{l-t}) = (−1)^t i^{b-a}`;
/// all other pairings of basis vectors vanish.
#[derive(Clone, Debug)]
pub struct SplitPmhs {
    pub weight: i32,
    pub dims: DimTable,
    pub j: Bigrading,
    pub q: BilForm,
    pub n: Mat,
    slots: Vec<Slot>,
    t: Mat,
    tinv: Mat,
}

impl SplitPmhs {
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn dim_v(&self) -> usize {
        self.slots.len()
    }

    pub fn index(&self, kind: Bidegree, copy: usize, step: usize, conjugate: bool) -> usize {
        self.slots
            .iter()
            .position(|s| s.kind == kind && s.copy == copy && s.step == step && s.conjugate == conjugate)
            .unwrap_or_else(|| panic!("no basis vector {kind:?}/{copy}/{step}/{conjugate}"))
    }

    /// Step `t` of copy `c` of the string of type `kind`.
    pub fn u(&self, kind: Bidegree, copy: usize, step: usize) -> usize {
        self.index(kind, copy, step, false)
    }

    pub fn ubar(&self, kind: Bidegree, copy: usize, step: usize) -> usize {
        self.index(kind, copy, step, true)
    }

    /// The basis vector of a slot in standard coordinates.
    pub fn vector(&self, slot: usize) -> Vec<Scalar> {
        self.t.column(slot)
    }

    /// The map sending basis vector `from` to `c · to` for every entry,
    /// completed to an element of `g` by subtracting its `Q`-adjoint.
    pub fn element(&self, entries: &[(usize, usize, Scalar)]) -> Mat {
        let n = self.dim_v();
        let mut xc = Mat::zeros(n, n);
        for (from, to, c) in entries {
            xc[(*to, *from)] += c;
        }
        let x = &(&self.t * &xc) * &self.tinv;
        &x - &self.q.adjoint(&x)
    }

    pub fn mhs(&self) -> MixedHodge {
        MixedHodge::from_bigrading(&self.j)
    }

    pub fn pmhs_data(&self) -> PmhsData {
        let m = self.mhs();
        PmhsData {
            weight: self.weight,
            w: m.w().clone(),
            f: m.f().clone(),
            n: self.n.clone(),
            q: self.q.clone(),
        }
    }

    pub fn orbit(&self, generators: Vec<Mat>) -> Result<NilpotentOrbit> {
        NilpotentOrbit::new(generators, self.mhs().f().clone(), self.weight, self.q.clone())
    }
}

/// Builds the split polarized mixed Hodge structure with the given
/// dimensions, optionally checking the Hodge numbers, and verifies it.
pub fn build_bigrading_from_dims(d: &DimTable, hodge: Option<&[usize]>) -> Result<SplitPmhs> {
    let k = d.weight();
    if let Some(h) = hodge {
        if h != d.hodge_numbers().as_slice() {
            return Err(Error::Infeasible(format!(
                "table gives Hodge numbers {:?}, expected {h:?}",
                d.hodge_numbers()
            )));
        }
    }
    let mut types: Vec<Bidegree> = d
        .entries()
        .keys()
        .copied()
        .filter(|&(a, b)| a + b >= k && a >= b && d.primitive(a, b) > 0)
        .collect();
    types.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));

    let mut slots = Vec::new();
    for &(a, b) in &types {
        let l = (a + b - k) as usize;
        for step in 0..=l {
            for copy in 0..d.primitive(a, b) {
                let t = step as i32;
                slots.push(Slot {
                    kind: (a, b),
                    copy,
                    step,
                    conjugate: false,
                    bidegree: (a - t, b - t),
                });
                if a != b {
                    slots.push(Slot {
                        kind: (a, b),
                        copy,
                        step,
                        conjugate: true,
                        bidegree: (b - t, a - t),
                    });
                }
            }
        }
    }
    let n = slots.len();
    if n != d.dim() {
        return Err(Error::Infeasible("dimension table is not generated by primitive strings".into()));
    }
    let find = |kind: Bidegree, copy: usize, step: usize, conjugate: bool| {
        slots
            .iter()
            .position(|s| s.kind == kind && s.copy == copy && s.step == step && s.conjugate == conjugate)
    };

    // u = e_i + i e_j and conj u = e_i − i e_j on the two real coordinates of a pair
    let mut t = Mat::zeros(n, n);
    for (idx, s) in slots.iter().enumerate() {
        if s.kind.0 == s.kind.1 {
            t[(idx, idx)] = Scalar::one();
        } else {
            let i = find(s.kind, s.copy, s.step, false).unwrap();
            let j = find(s.kind, s.copy, s.step, true).unwrap();
            t[(i, idx)] = Scalar::one();
            t[(j, idx)] = if s.conjugate { Scalar::gaussian(0, -1) } else { Scalar::i() };
        }
    }
    let mut qc = Mat::zeros(n, n);
    let mut nc = Mat::zeros(n, n);
    for (idx, s) in slots.iter().enumerate() {
        let (a, b) = s.kind;
        let l = (a + b - k) as usize;
        let sign = if s.step % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        let partner = l - s.step;
        if a == b {
            let p = find(s.kind, s.copy, partner, false).unwrap();
            qc[(idx, p)] = sign;
        } else {
            let c = &sign * &Scalar::i_pow((b - a) as i64);
            let p = find(s.kind, s.copy, partner, !s.conjugate).unwrap();
            qc[(idx, p)] = if s.conjugate { c.conj() } else { c };
        }
        if s.step < l {
            let next = find(s.kind, s.copy, s.step + 1, s.conjugate).unwrap();
            nc[(next, idx)] = Scalar::one();
        }
    }
    let tinv = t.inverse()?;
    let s_real = &(&tinv.transpose() * &qc) * &tinv;
    let n_real = &(&t * &nc) * &tinv;
    if !s_real.is_real() || !n_real.is_real() {
        return Err(Error::Postcondition("split structure is not defined over R".into()));
    }
    let q = BilForm::new(s_real, k)?;

    let mut parts: BTreeMap<Bidegree, Vec<Vec<Scalar>>> = BTreeMap::new();
    for (idx, s) in slots.iter().enumerate() {
        parts.entry(s.bidegree).or_default().push(t.column(idx));
    }
    let j = Bigrading::new(n, parts.into_iter().map(|(key, vs)| (key, Subspace::span(n, vs))).collect())?;

    let out = SplitPmhs {
        weight: k,
        dims: d.clone(),
        j,
        q,
        n: n_real,
        slots,
        t,
        tinv,
    };
    let report = mixed::verify_pmhs(&out.pmhs_data())?;
    if !report.passed() {
        let why: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        return Err(Error::Postcondition(format!("built structure fails: {}", why.join(", "))));
    }
    Ok(out)
}

/// The weight-two CKTM value `q(2, h)`.
pub fn cktm_bound_k2(h20: usize, h11: usize) -> Result<usize> {
    if h20 == 0 {
        return Err(Error::InvalidHodgeNumbers("h^{2,0} must be positive".into()));
    }
    Ok(if h20 == 1 {
        h11
    } else if h11 % 2 == 1 {
        h20 * (h11 - 1) / 2 + 1
    } else {
        h20 * h11 / 2
    })
}

fn verified(ivi: Ivi) -> Result<Ivi> {
    let rep = asymptotic::verify_ivi(&ivi)?;
    if !rep.passed() {
        let why: Vec<String> = rep.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(Error::Postcondition(format!("built IVI fails: {}", why.join("; "))));
    }
    Ok(ivi)
}

fn verified_orbit(orbit: NilpotentOrbit) -> Result<NilpotentOrbit> {
    let rep = asymptotic::verify_orbit(&orbit, &[])?;
    if !rep.passed() {
        let why: Vec<String> = rep.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(Error::Postcondition(format!("built orbit fails: {}", why.join("; "))));
    }
    Ok(orbit)
}

/// A maximal-dimension IVI of weight two with the given Hodge numbers.
pub fn build_max_ivi_k2(h20: usize, h11: usize) -> Result<Ivi> {
    let bound = cktm_bound_k2(h20, h11)?;
    let (h20i, h11i) = (h20 as i32, h11 as i32);
    let one = Scalar::one;
    let mut entries: Vec<Vec<(usize, usize, Scalar)>> = Vec::new();
    let s;
    let with_cone;

    if h20 == 1 && h11 >= 2 {
        s = build_bigrading_from_dims(
            &DimTable::new(2, &[((2, 1), 1), ((1, 1), h11 - 2)])?,
            Some(&[1, h11, 1]),
        )?;
        let u0 = s.u((2, 1), 0, 0);
        entries.push(vec![(u0, s.u((2, 1), 0, 1), one())]);
        entries.push(vec![(u0, s.ubar((2, 1), 0, 0), one())]);
        for c in 0..h11 - 2 {
            entries.push(vec![(u0, s.u((1, 1), c, 0), one())]);
        }
        with_cone = true;
    } else if h20 == 1 {
        s = build_bigrading_from_dims(
            &DimTable::new(2, &[((2, 0), 1), ((1, 1), h11)])?,
            Some(&[1, h11, 1]),
        )?;
        if h11 == 1 {
            entries.push(vec![(s.u((2, 0), 0, 0), s.u((1, 1), 0, 0), one())]);
        }
        with_cone = false;
    } else {
        let odd = h11 % 2 == 1;
        let half = (h11i - i32::from(odd)) / 2;
        // first branch: j^{2,1} = half, rest in J^{2,0}; second: j^{2,1} = h20
        let wide = if odd { 2 * h20i > h11i - 1 } else { 2 * h20i >= h11i };
        let (j21, j20, j11) = if wide {
            (half, h20i - half, i32::from(odd))
        } else {
            (h20i, 0, h11i - 2 * h20i)
        };
        s = build_bigrading_from_dims(
            &DimTable::new(2, &[((2, 1), j21 as usize), ((2, 0), j20 as usize), ((1, 1), j11 as usize)])?,
            Some(&[h20, h11, h20]),
        )?;
        let (j21, j20, j11) = (j21 as usize, j20 as usize, j11 as usize);
        // a_1: all of Hom(J^{2,1}, J^{1,0})
        for c in 0..j21 {
            for c2 in 0..j21 {
                entries.push(vec![(s.u((2, 1), c, 0), s.u((2, 1), c2, 1), one())]);
            }
        }
        if wide {
            // a_2: Hom(J^{2,0}, J^{1,0}); one φ into J^{1,1} when it is there
            for d in 0..j20 {
                for c in 0..j21 {
                    entries.push(vec![(s.u((2, 0), d, 0), s.u((2, 1), c, 1), one())]);
                }
            }
            if odd {
                entries.push(vec![(s.u((2, 0), 0, 0), s.u((1, 1), 0, 0), one())]);
            }
        } else {
            // J^{1,1} = L ⊕ K ⊕ conj K with K spanned by w_{2m+o} + i w_{2m+o+1}
            let offset = usize::from(odd);
            for c in 0..j21 {
                for m in 0..(j11 - offset) / 2 {
                    let u0 = s.u((2, 1), c, 0);
                    entries.push(vec![
                        (u0, s.u((1, 1), offset + 2 * m, 0), one()),
                        (u0, s.u((1, 1), offset + 2 * m + 1, 0), Scalar::i()),
                    ]);
                }
            }
            if odd {
                entries.push(vec![(s.u((2, 1), 0, 0), s.u((1, 1), 0, 0), one())]);
            }
        }
        with_cone = j21 > 0;
    }
    let basis: Vec<Mat> = entries.iter().map(|e| s.element(e)).collect();
    let generators = if with_cone { vec![s.n.clone()] } else { Vec::new() };
    let ivi = verified(Ivi::new(s.orbit(generators)?, &basis)?)?;
    if ivi.dim() != bound {
        return Err(Error::Postcondition(format!("built IVI has dimension {} instead of {bound}", ivi.dim())));
    }
    Ok(ivi)
}

/// Hodge–Tate tower of weight `k` with `dim J^{a,a} = n`.
pub fn hodge_tate(k: usize, n: usize) -> Result<SplitPmhs> {
    if k == 0 || n == 0 {
        return Err(Error::Infeasible("Hodge–Tate tower needs k ≥ 1 and n ≥ 1".into()));
    }
    let k = k as i32;
    let given: Vec<(Bidegree, usize)> = (0..=k).map(|a| ((a, a), n)).collect();
    build_bigrading_from_dims(&DimTable::new(k, &given)?, None)
}

pub fn hodge_tate_orbit(k: usize, n: usize) -> Result<NilpotentOrbit> {
    let s = hodge_tate(k, n)?;
    verified_orbit(s.orbit(vec![s.n.clone()])?)
}

/// For a weight-two tower: the element of `p₋₁` restricting to `A` on
/// `J^{2,2} → J^{1,1}` in the string bases.
pub fn tower_map(s: &SplitPmhs, a: &Mat) -> Mat {
    let mut entries = Vec::new();
    for c in 0..a.cols() {
        for r in 0..a.rows() {
            if !a[(r, c)].is_zero() {
                entries.push((s.u((2, 2), c, 0), s.u((2, 2), r, 1), a[(r, c)].clone()));
            }
        }
    }
    s.element(&entries)
}

fn symmetric_unit(n: usize, i: usize, j: usize) -> Mat {
    let mut b = Mat::unit(n, n, i, j);
    if i != j {
        b = &b + &Mat::unit(n, n, j, i);
    }
    b
}

/// `[[aI + iB, B], [B, aI − iB]]` for symmetric `B`, over the tower with
/// `j^{2,2} = j^{1,1} = 2d`.
pub fn symmetric_family_ivi(d: usize) -> Result<Ivi> {
    if d == 0 {
        return Err(Error::Infeasible("d must be positive".into()));
    }
    let s = hodge_tate(2, 2 * d)?;
    let mut basis = vec![s.n.clone()];
    for i in 0..d {
        for j in i..d {
            let b = symmetric_unit(d, i, j);
            let mut a = Mat::zeros(2 * d, 2 * d);
            a.set_block(0, 0, &b.scale(&Scalar::i()));
            a.set_block(0, d, &b);
            a.set_block(d, 0, &b);
            a.set_block(d, d, &b.scale(&Scalar::gaussian(0, -1)));
            basis.push(tower_map(&s, &a));
        }
    }
    let orbit = s.orbit(vec![s.n.clone()])?;
    verified(Ivi::new(orbit, &basis)?)
}

/// The cone of the `2d` diagonal units over the same tower, with the IVI of
/// all diagonal maps.
pub fn diagonal_cone_orbit(d: usize) -> Result<(NilpotentOrbit, Ivi)> {
    if d == 0 {
        return Err(Error::Infeasible("d must be positive".into()));
    }
    let n = 2 * d;
    let s = hodge_tate(2, n)?;
    let gens: Vec<Mat> = (0..n).map(|a| tower_map(&s, &Mat::unit(n, n, a, a))).collect();
    let orbit = verified_orbit(s.orbit(gens.clone())?)?;
    let ivi = verified(Ivi::new(orbit.clone(), &gens)?)?;
    let p = orbit.p_minus_one()?;
    if !asymptotic::is_maximal_abelian(&ivi.a, &p)? {
        return Err(Error::Postcondition("diagonal IVI is not maximal".into()));
    }
    Ok((orbit, ivi))
}

/// Maximal dimension of abelian subspaces of symmetric `n × n` matrices
/// containing the identity.
pub fn max_dim_symmetric(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 1,
        _ => carlson_toledo_bound(n) + 1,
    }
}

/// Maximal dimension of abelian subspaces of trace-free symmetric matrices.
pub fn carlson_toledo_bound(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let (alpha, beta) = (n / 2, n % 2);
    alpha * (alpha + 1) / 2 + beta
}

/// A row of the weight-two catalog with `h^{2,0} = h^{1,1} = 3`.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub label: String,
    pub dims: DimTable,
    /// Cone dimensions realized, `0` standing for the zero cone.
    pub cone_dims_available: Vec<usize>,
    /// One IVI per available cone, all with the same abelian space.
    pub per_cone: Vec<Ivi>,
    pub expected_max: usize,
}

impl CatalogRow {
    /// The IVI over the largest cone.
    pub fn witness(&self) -> &Ivi {
        self.per_cone.last().expect("every row has a cone")
    }
}

fn row(label: &str, s: &SplitPmhs, cones: Vec<Vec<Mat>>, basis: &[Mat], expected_max: usize) -> Result<CatalogRow> {
    let mut per_cone = Vec::new();
    let mut cone_dims = Vec::new();
    for gens in cones {
        cone_dims.push(gens.len());
        per_cone.push(verified(Ivi::new(s.orbit(gens)?, basis)?)?);
    }
    let out = CatalogRow {
        label: label.to_string(),
        dims: s.dims.clone(),
        cone_dims_available: cone_dims,
        per_cone,
        expected_max,
    };
    if out.per_cone.iter().any(|v| v.dim() != expected_max) {
        return Err(Error::Postcondition(format!("{label}: witness dimension differs from {expected_max}")));
    }
    Ok(out)
}

/// The six rows, each with hand-built witnesses of the maximal dimension.
pub fn table1_catalog() -> Result<Vec<CatalogRow>> {
    let one = Scalar::one;
    let h = [3, 3, 3];
    let mut rows = Vec::new();

    // pure: J^{1,1} = L ⊕ K ⊕ conj K, all maps J^{2,0} → K plus one into L
    let s = build_bigrading_from_dims(&DimTable::new(2, &[((2, 0), 3), ((1, 1), 3)])?, Some(&h))?;
    let mut basis = Vec::new();
    for dd in 0..3 {
        let u = s.u((2, 0), dd, 0);
        basis.push(s.element(&[(u, s.u((1, 1), 1, 0), one()), (u, s.u((1, 1), 2, 0), Scalar::i())]));
    }
    basis.push(s.element(&[(s.u((2, 0), 0, 0), s.u((1, 1), 0, 0), one())]));
    rows.push(row("j20=j11=3", &s, vec![vec![]], &basis, 4)?);

    let v = build_max_ivi_k2(3, 3)?;
    rows.push(CatalogRow {
        label: "j21=j11=1, j20=2".into(),
        dims: DimTable::new(2, &[((2, 1), 1), ((2, 0), 2), ((1, 1), 1)])?,
        cone_dims_available: vec![1],
        per_cone: vec![v],
        expected_max: 4,
    });

    // J^{2,2} → J^{1,1} with J^{1,1}_R Lorentzian; cone vectors inside the negative cone
    let s = build_bigrading_from_dims(&DimTable::new(2, &[((2, 2), 1), ((2, 0), 2), ((1, 1), 3)])?, Some(&h))?;
    let w0 = s.u((2, 2), 0, 0);
    let string = s.u((2, 2), 0, 1);
    let p = |c| s.u((1, 1), c, 0);
    let basis = vec![
        s.element(&[(w0, string, one())]),
        s.element(&[(w0, p(0), one())]),
        s.element(&[(w0, p(1), one())]),
    ];
    let two = Scalar::from_int(2);
    let n1 = basis[0].clone();
    let n2 = s.element(&[(w0, string, two.clone()), (w0, p(0), one())]);
    let n3 = s.element(&[(w0, string, two.clone()), (w0, p(1), one())]);
    let cones = vec![vec![n1.clone()], vec![n1.clone(), n2.clone()], vec![n1, n2, n3]];
    rows.push(row("j22=1, j20=2, j11=3", &s, cones, &basis, 3)?);

    let s = build_bigrading_from_dims(
        &DimTable::new(2, &[((2, 2), 1), ((1, 1), 1), ((2, 1), 1), ((2, 0), 1)])?,
        Some(&h),
    )?;
    let n1 = s.element(&[(s.u((2, 2), 0, 0), s.u((2, 2), 0, 1), one())]);
    let n2 = s.element(&[(s.u((2, 1), 0, 0), s.u((2, 1), 0, 1), one())]);
    let psi = s.element(&[(s.u((2, 1), 0, 0), s.ubar((2, 1), 0, 0), one())]);
    let basis = vec![n1.clone(), n2.clone(), psi];
    let cones = vec![vec![&n1 + &n2], vec![n1, n2]];
    rows.push(row("j22=j11=j21=j20=1", &s, cones, &basis, 3)?);

    // maps J^{2,2} → J^{1,1} with matrices [[a,0],[0,d],[e,0]] in the basis
    // (string 0, string 1, primitive)
    let s = build_bigrading_from_dims(&DimTable::new(2, &[((2, 2), 2), ((2, 0), 1), ((1, 1), 3)])?, Some(&h))?;
    let w = |c| s.u((2, 2), c, 0);
    let x = |c| s.u((2, 2), c, 1);
    let prim = s.u((1, 1), 0, 0);
    let a1 = s.element(&[(w(0), x(0), one())]);
    let a2 = s.element(&[(w(1), x(1), one())]);
    let e31 = s.element(&[(w(0), prim, one())]);
    let a3 = s.element(&[(w(0), x(0), one()), (w(0), prim, Scalar::from_ratio(1, 2))]);
    let basis = vec![a1.clone(), a2.clone(), e31];
    let cones = vec![vec![&a1 + &a2], vec![a1.clone(), a2.clone()], vec![a1, a2, a3]];
    rows.push(row("j22=2, j20=1, j11=3", &s, cones, &basis, 3)?);

    let s = hodge_tate(2, 3)?;
    let unit = |i| tower_map(&s, &Mat::unit(3, 3, i, i));
    let basis = vec![unit(0), unit(1), unit(2)];
    let cones = vec![
        vec![s.n.clone()],
        vec![unit(0), &unit(1) + &unit(2)],
        vec![unit(0), unit(1), unit(2)],
    ];
    rows.push(row("j22=j11=3", &s, cones, &basis, 3)?);

    Ok(rows)
}

/// `p₋₁` as a list of matrices and the cone span, for search and reporting.
pub fn p_minus_one_basis(orbit: &NilpotentOrbit) -> Result<Vec<Mat>> {
    Ok(lie::unflatten_basis(orbit.dim_v(), &orbit.p_minus_one()?))
}

/// Signature of `Q` restricted to the real points of a conjugation-stable subspace.
pub fn restricted_signature(q: &BilForm, s: &Subspace) -> Result<(usize, usize)> {
    let n = q.dim();
    // real points: real and imaginary parts of a basis, reduced to a real basis
    let mut real = Subspace::zero(n);
    for v in s.basis_vectors() {
        let re: Vec<Scalar> = v.iter().map(|x| Scalar::from_real(x.re().clone())).collect();
        let im: Vec<Scalar> = v.iter().map(|x| Scalar::from_real(x.im().clone())).collect();
        real.insert(&re);
        real.insert(&im);
    }
    if real.dim() != s.dim() {
        return Err(Error::NotReal);
    }
    let b = real.basis_vectors().to_vec();
    crate::forms::signature(&q.gram(&b, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(cktm_bound_k2(3, 3).unwrap(), 4);
        assert_eq!(cktm_bound_k2(2, 4).unwrap(), 4);
        assert_eq!(cktm_bound_k2(1, 5).unwrap(), 5);
        assert!(cktm_bound_k2(0, 5).is_err());
        assert_eq!(max_dim_symmetric(3), 3);
        assert_eq!(carlson_toledo_bound(3), 2);
        assert_eq!(max_dim_symmetric(4), 4);
        assert_eq!((max_dim_symmetric(1), carlson_toledo_bound(1)), (1, 0));
        let v: Vec<usize> = (1..=6).map(max_dim_symmetric).collect();
        assert_eq!(v, vec![1, 2, 3, 4, 5, 7]);
    }

    #[test]
    fn dim_table_symmetry() {
        let d = DimTable::new(2, &[((2, 1), 1), ((2, 0), 2), ((1, 1), 1)]).unwrap();
        assert_eq!(d.get(1, 0), 1);
        assert_eq!(d.get(0, 1), 1);
        assert_eq!(d.get(0, 2), 2);
        assert_eq!(d.hodge_numbers(), vec![3, 3, 3]);
        assert!(DimTable::new(2, &[((2, 1), 2), ((1, 0), 1)]).is_err());
        assert!(DimTable::new(2, &[((2, 2), 2), ((1, 1), 1)]).is_err());
    }

    #[test]
    fn hodge_tate_form_is_antidiagonal() {
        let s = hodge_tate(2, 2).unwrap();
        let i = Mat::identity(2);
        let mut expect = Mat::zeros(6, 6);
        expect.set_block(0, 4, &i);
        expect.set_block(2, 2, &-&i);
        expect.set_block(4, 0, &i);
        assert_eq!(s.q.matrix(), &expect);
        let neg = PmhsData { n: -&s.n, ..s.pmhs_data() };
        // even weight tower: only l = 2 is primitive, so the sign of N is invisible
        assert!(mixed::verify_pmhs(&neg).unwrap().passed());
        let odd = hodge_tate(1, 2).unwrap();
        let neg = PmhsData { n: -&odd.n, ..odd.pmhs_data() };
        assert!(!mixed::verify_pmhs(&neg).unwrap().passed());
    }

    #[test]
    fn small_cktm_cases() {
        for (h20, h11, r) in [(3, 3, 1), (1, 4, 1), (1, 1, 0), (2, 5, 1), (2, 6, 1), (2, 1, 0)] {
            let v = build_max_ivi_k2(h20, h11).unwrap();
            assert_eq!(v.dim(), cktm_bound_k2(h20, h11).unwrap(), "({h20},{h11})");
            assert_eq!(v.orbit.cone.len(), r, "({h20},{h11})");
        }
    }

    #[test]
    fn catalog_rows_verify() {
        let rows = table1_catalog().unwrap();
        let maxima: Vec<usize> = rows.iter().map(|r| r.expected_max).collect();
        assert_eq!(maxima, vec![4, 4, 3, 3, 3, 3]);
        assert_eq!(rows[2].cone_dims_available, vec![1, 2, 3]);
        assert_eq!(rows[0].cone_dims_available, vec![0]);
        for r in &rows {
            assert_eq!(r.dims.hodge_numbers(), vec![3, 3, 3], "{}", r.label);
        }
    }

    #[test]
    fn symmetric_families() {
        for d in 1..=2 {
            let v = symmetric_family_ivi(d).unwrap();
            assert_eq!(v.dim(), d * (d + 1) / 2 + 1);
            let p = v.orbit.p_minus_one().unwrap();
            assert!(asymptotic::is_maximal_abelian(&v.a, &p).unwrap());
            let (orbit, diag) = diagonal_cone_orbit(d).unwrap();
            assert_eq!(orbit.cone.len(), 2 * d);
            assert_eq!(diag.dim(), 2 * d);
        }
    }
}
