//! Integer symplectic action of the twist generators on first homology.
//!
//! The 2g+1 chain curves get concrete homology classes realizing the
//! standard intersection pattern (consecutive curves meet once, distant
//! curves are disjoint), and each twist acts as the transvection
//! `x ↦ x + ⟨x, v⟩ v` along its class. Relations among twists can then be
//! verified as exact integer-matrix identities. These are necessary
//! conditions only: the representation is far from faithful, so a passing
//! check rules out typos in a relation without proving it, and every report
//! is labelled accordingly.
//!
//! Entries are arbitrary-precision: high powers of chain products overflow
//! 64-bit integers already for moderate genus.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::trace_words::Word;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// An element of first homology in the basis `a1, b1, a2, b2, …, ag, bg`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyClass {
    coords: Vec<BigInt>,
}

impl HomologyClass {
    fn zero(g: usize) -> Self {
        HomologyClass { coords: vec![BigInt::zero(); 2 * g] }
    }

    pub fn coordinates(&self) -> &[BigInt] {
        &self.coords
    }

    /// Algebraic intersection number `⟨self, other⟩` with `⟨a_i, b_i⟩ = +1`.
    pub fn pairing(&self, other: &HomologyClass) -> BigInt {
        assert_eq!(self.coords.len(), other.coords.len(), "genus mismatch");
        let g = self.coords.len() / 2;
        let mut acc = BigInt::zero();
        for i in 0..g {
            acc += &self.coords[2 * i] * &other.coords[2 * i + 1]
                - &self.coords[2 * i + 1] * &other.coords[2 * i];
        }
        acc
    }
}

/// The matrix of the intersection form: block diagonal copies of
/// `[[0, 1], [-1, 0]]`, one per handle.
pub fn intersection_form(g: usize) -> Result<IntMatrix> {
    if g == 0 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    let mut j = IntMatrix::zeros(2 * g);
    for i in 0..g {
        j[(2 * i, 2 * i + 1)] = BigInt::one();
        j[(2 * i + 1, 2 * i)] = -BigInt::one();
    }
    Ok(j)
}

/// Homology classes `v1, …, v_{2g+1}` of the chain curves:
/// `v_{2i-1} = a_i - a_{i-1}` (with `a_0 = 0`), `v_{2i} = b_i`, and
/// `v_{2g+1} = -a_g`. Consecutive classes pair to +1, distant ones to 0.
pub fn chain_classes(g: usize) -> Result<Vec<HomologyClass>> {
    if g == 0 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    let mut out = Vec::with_capacity(2 * g + 1);
    for i in 1..=g {
        let mut v = HomologyClass::zero(g);
        v.coords[2 * (i - 1)] = BigInt::one();
        if i >= 2 {
            v.coords[2 * (i - 2)] = -BigInt::one();
        }
        out.push(v);
        let mut w = HomologyClass::zero(g);
        w.coords[2 * (i - 1) + 1] = BigInt::one();
        out.push(w);
    }
    let mut z = HomologyClass::zero(g);
    z.coords[2 * (g - 1)] = -BigInt::one();
    out.push(z);
    Ok(out)
}

/// An integer matrix acting on first homology and preserving the
/// intersection form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticElement {
    g: usize,
    mat: IntMatrix,
}

impl SymplecticElement {
    pub fn identity(g: usize) -> Self {
        SymplecticElement { g, mat: IntMatrix::identity(2 * g) }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn mul(&self, other: &SymplecticElement) -> SymplecticElement {
        assert_eq!(self.g, other.g, "genus mismatch");
        SymplecticElement { g: self.g, mat: self.mat.mul(&other.mat) }
    }

    pub fn pow(&self, e: u64) -> SymplecticElement {
        SymplecticElement { g: self.g, mat: self.mat.pow(e) }
    }

    /// Inverse via the form: `M⁻¹ = -J Mᵀ J` whenever `Mᵀ J M = J`.
    pub fn inverse(&self) -> SymplecticElement {
        let j = intersection_form(self.g).expect("g >= 1");
        let inv = j.mul(&self.mat.transpose()).mul(&j).neg();
        SymplecticElement { g: self.g, mat: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn is_neg_identity(&self) -> bool {
        self.mat.is_neg_identity()
    }

    /// Does `Mᵀ J M = J` hold?
    pub fn preserves_form(&self) -> bool {
        let j = intersection_form(self.g).expect("g >= 1");
        self.mat.transpose().mul(&j).mul(&self.mat) == j
    }

    pub fn det(&self) -> BigInt {
        self.mat.det()
    }

    pub fn apply(&self, x: &HomologyClass) -> HomologyClass {
        let n = 2 * self.g;
        assert_eq!(x.coords.len(), n, "genus mismatch");
        let mut out = HomologyClass::zero(self.g);
        for i in 0..n {
            let mut acc = BigInt::zero();
            for t in 0..n {
                acc += &self.mat[(i, t)] * &x.coords[t];
            }
            out.coords[i] = acc;
        }
        out
    }
}

/// Transvection `x ↦ x + sign·⟨x, v⟩·v` as a matrix: `I + sign·v(Jv)ᵀ`.
fn transvection(g: usize, v: &HomologyClass, positive: bool) -> SymplecticElement {
    let n = 2 * g;
    let j = intersection_form(g).expect("g >= 1");
    let jv: Vec<BigInt> = (0..n)
        .map(|row| (0..n).map(|t| &j[(row, t)] * &v.coords[t]).sum())
        .collect();
    let mut mat = IntMatrix::identity(n);
    for i in 0..n {
        for col in 0..n {
            let term = &v.coords[i] * &jv[col];
            if positive {
                mat[(i, col)] += term;
            } else {
                mat[(i, col)] -= term;
            }
        }
    }
    SymplecticElement { g, mat }
}

fn check_curve_index(g: usize, i: usize) -> Result<()> {
    if i == 0 || i > 2 * g + 1 {
        return Err(Error::CurveIndexOutOfRange { g, index: i, max: 2 * g + 1 });
    }
    Ok(())
}

/// Homology action of the right-handed twist along the i-th chain curve.
pub fn twist_matrix(g: usize, i: usize) -> Result<SymplecticElement> {
    if g == 0 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    check_curve_index(g, i)?;
    let classes = chain_classes(g)?;
    Ok(transvection(g, &classes[i - 1], true))
}

/// Product of twist matrices for a word over `t_1 … t_{2g+1}`, left to right;
/// inverse letters contribute inverse transvections. The empty word maps to
/// the identity.
pub fn evaluate(g: usize, word: &Word) -> Result<SymplecticElement> {
    if g == 0 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    let classes = chain_classes(g)?;
    let mut cache: Vec<[Option<SymplecticElement>; 2]> = vec![[None, None]; 2 * g + 1];
    let mut acc = SymplecticElement::identity(g);
    for letter in word.letters() {
        let i = letter.index();
        check_curve_index(g, i)?;
        let positive = letter.sign() == crate::trace_words::Sign::Positive;
        let slot = if positive { 0 } else { 1 };
        if cache[i - 1][slot].is_none() {
            cache[i - 1][slot] = Some(transvection(g, &classes[i - 1], positive));
        }
        acc = acc.mul(cache[i - 1][slot].as_ref().unwrap());
    }
    Ok(acc)
}

fn ascending_word(from: usize, to: usize, alphabet: usize) -> Word {
    let signed: Vec<i64> = (from..=to).map(|i| i as i64).collect();
    Word::from_signed(&signed, alphabet).expect("indices in range")
}

/// Necessary condition for the even chain relation: the (4h+2)-nd power of
/// `t_1 t_2 ⋯ t_{2h}` is a separating twist, so it must act trivially on
/// homology.
pub fn check_chain_relation(g: usize, h: usize) -> Result<bool> {
    if g == 0 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    if h == 0 || 2 * h > 2 * g + 1 {
        return Err(Error::SeparatingTypeOutOfRange { g, h, lo: 1, hi: g });
    }
    let p = evaluate(g, &ascending_word(1, 2 * h, 2 * g + 1))?;
    Ok(p.pow(4 * h as u64 + 2).is_identity())
}

/// The word `t_1 t_2 ⋯ t_{2g} t_{2g+1}^2 t_{2g} ⋯ t_2 t_1` expressing the
/// hyperelliptic involution.
pub fn hyperelliptic_word(g: usize) -> Word {
    let mut signed: Vec<i64> = (1..=2 * g as i64 + 1).collect();
    signed.push(2 * g as i64 + 1);
    signed.extend((1..=2 * g as i64).rev());
    Word::from_signed(&signed, 2 * g + 1).expect("indices in range")
}

/// The hyperelliptic involution must act as `-I`, and commute with every
/// twist generator. The commutation is implied by `-I` but asserted
/// explicitly as its own identity.
pub fn check_hyperelliptic(g: usize) -> Result<bool> {
    if g == 0 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    let iota = evaluate(g, &hyperelliptic_word(g))?;
    if !iota.is_neg_identity() {
        return Ok(false);
    }
    for i in 1..=2 * g + 1 {
        let t = twist_matrix(g, i)?;
        if iota.mul(&t) != t.mul(&iota) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_block_params(g: usize, h: usize) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusOutOfRange { g, min: 2 });
    }
    if h == 0 || 2 * h > g {
        return Err(Error::SeparatingTypeOutOfRange { g, h, lo: 1, hi: g / 2 });
    }
    Ok(())
}

/// Necessary condition for the boundary blocks to power into separating
/// twists: both `t_1^2 t_2 ⋯ t_{2h}` and `t_{2g+1}^2 t_{2g} ⋯ t_{2(g-h)+2}`
/// must have trivial 4h-th power on homology.
pub fn check_squared_chain_power(g: usize, h: usize) -> Result<bool> {
    check_block_params(g, h)?;
    let blocks = crate::replay::build_blocks(g, h)?;
    let first = evaluate(g, blocks.first().expect("nonempty").word())?;
    let last = evaluate(g, blocks[blocks.len() - 2].word())?;
    let e = 4 * h as u64;
    Ok(first.pow(e).is_identity() && last.pow(e).is_identity())
}

/// Necessary condition for the block factorization of the involution:
/// `T_1 T_2 ⋯ T_{k+2} S` must act as `-I` (equivalently
/// `T_1 ⋯ T_{k+2} = ι S⁻¹` on homology).
pub fn check_block_relation(g: usize, h: usize) -> Result<bool> {
    check_block_params(g, h)?;
    let blocks = crate::replay::build_blocks(g, h)?;
    let mut word = Word::empty(2 * g + 1)?;
    for b in &blocks {
        word = word.concat(b.word());
    }
    Ok(evaluate(g, &word)?.is_neg_identity())
}

/// Necessary condition behind the descending block `S`: its
/// `(4(g-h)+2)`-nd power is a separating twist, hence trivial on homology.
pub fn check_descending_chain_power(g: usize, h: usize) -> Result<bool> {
    check_block_params(g, h)?;
    let blocks = crate::replay::build_blocks(g, h)?;
    let s = evaluate(g, blocks.last().expect("nonempty").word())?;
    Ok(s.pow(4 * (g - h) as u64 + 2).is_identity())
}

/// One verified identity in a [`HomologySuiteReport`].
#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub params: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl SuiteCheck {
    fn ok(name: &str, params: String) -> Self {
        SuiteCheck { name: name.to_string(), params, pass: true, diagnostic: None }
    }

    fn fail(name: &str, params: String, diagnostic: String) -> Self {
        SuiteCheck { name: name.to_string(), params, pass: false, diagnostic: Some(diagnostic) }
    }
}

/// Result of the full homology-level verification suite at one genus.
#[derive(Clone, Debug, Serialize)]
pub struct HomologySuiteReport {
    pub g: usize,
    /// Reminder that a pass is a necessary condition, not a proof.
    pub level: &'static str,
    pub checks: Vec<SuiteCheck>,
    pub passed: bool,
}

impl HomologySuiteReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("homology-level verification, genus {}\n", self.g);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {} {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.params
            ));
            if let Some(d) = &c.diagnostic {
                out.push_str(&format!("         {d}\n"));
            }
        }
        out.push_str(&format!(
            "  {}: {}/{} checks passed\n",
            if self.passed { "ok" } else { "FAILED" },
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        ));
        out
    }
}

fn residual_diag(m: &SymplecticElement, expected_neg: bool) -> String {
    let expected = if expected_neg {
        IntMatrix::identity(2 * m.genus()).neg()
    } else {
        IntMatrix::identity(2 * m.genus())
    };
    let mut max = BigInt::zero();
    for i in 0..2 * m.genus() {
        for j in 0..2 * m.genus() {
            let d = (&m.matrix()[(i, j)] - &expected[(i, j)]).abs();
            if d > max {
                max = d;
            }
        }
    }
    format!("max |entry| of residual = {max}")
}

/// Runs every homology-level identity at genus `g`: form preservation and
/// unimodularity of the twist matrices, braid and commutation relations for
/// all generator pairs, the chain relations, the hyperelliptic involution,
/// and the block identities for every separating type.
pub fn verify_suite(g: usize) -> Result<HomologySuiteReport> {
    if g < 2 {
        return Err(Error::GenusOutOfRange { g, min: 2 });
    }
    let mut checks = Vec::new();
    let n = 2 * g + 1;

    let twists: Vec<SymplecticElement> =
        (1..=n).map(|i| twist_matrix(g, i)).collect::<Result<_>>()?;

    let mut bad = Vec::new();
    for (i, t) in twists.iter().enumerate() {
        if !t.preserves_form() || t.det() != BigInt::one() {
            bad.push(i + 1);
        }
    }
    checks.push(if bad.is_empty() {
        SuiteCheck::ok("twist_matrices_symplectic_unimodular", format!("i=1..{n}"))
    } else {
        SuiteCheck::fail(
            "twist_matrices_symplectic_unimodular",
            format!("i=1..{n}"),
            format!("failing indices: {bad:?}"),
        )
    });

    let mut bad = Vec::new();
    for i in 0..n - 1 {
        let lhs = twists[i].mul(&twists[i + 1]).mul(&twists[i]);
        let rhs = twists[i + 1].mul(&twists[i]).mul(&twists[i + 1]);
        if lhs != rhs {
            bad.push(i + 1);
        }
    }
    checks.push(if bad.is_empty() {
        SuiteCheck::ok("braid_relation_adjacent_pairs", format!("(i,i+1), i=1..{}", n - 1))
    } else {
        SuiteCheck::fail(
            "braid_relation_adjacent_pairs",
            format!("(i,i+1), i=1..{}", n - 1),
            format!("failing i: {bad:?}"),
        )
    });

    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if twists[i].mul(&twists[j]) != twists[j].mul(&twists[i]) {
                bad.push((i + 1, j + 1));
            }
        }
    }
    checks.push(if bad.is_empty() {
        SuiteCheck::ok("commutation_distant_pairs", format!("|i-j|>=2, i,j in 1..{n}"))
    } else {
        SuiteCheck::fail(
            "commutation_distant_pairs",
            format!("|i-j|>=2, i,j in 1..{n}"),
            format!("failing pairs: {bad:?}"),
        )
    });

    for h in 1..=g {
        let p = evaluate(g, &ascending_word(1, 2 * h, n))?.pow(4 * h as u64 + 2);
        checks.push(if p.is_identity() {
            SuiteCheck::ok("chain_relation_power_trivial", format!("h={h}"))
        } else {
            SuiteCheck::fail(
                "chain_relation_power_trivial",
                format!("h={h}"),
                residual_diag(&p, false),
            )
        });
    }

    let iota = evaluate(g, &hyperelliptic_word(g))?;
    checks.push(if iota.is_neg_identity() {
        SuiteCheck::ok("hyperelliptic_involution_is_minus_identity", String::new())
    } else {
        SuiteCheck::fail(
            "hyperelliptic_involution_is_minus_identity",
            String::new(),
            residual_diag(&iota, true),
        )
    });
    let central = twists.iter().all(|t| iota.mul(t) == t.mul(&iota));
    checks.push(if central {
        SuiteCheck::ok("hyperelliptic_commutes_with_twists", format!("i=1..{n}"))
    } else {
        SuiteCheck::fail(
            "hyperelliptic_commutes_with_twists",
            format!("i=1..{n}"),
            "some generator does not commute".to_string(),
        )
    });

    for h in 1..=g / 2 {
        checks.push(if check_squared_chain_power(g, h)? {
            SuiteCheck::ok("squared_chain_power_trivial", format!("h={h}"))
        } else {
            SuiteCheck::fail(
                "squared_chain_power_trivial",
                format!("h={h}"),
                "4h-th power differs from identity".to_string(),
            )
        });
        checks.push(if check_block_relation(g, h)? {
            SuiteCheck::ok("block_product_is_involution", format!("h={h}"))
        } else {
            SuiteCheck::fail(
                "block_product_is_involution",
                format!("h={h}"),
                "product differs from -I".to_string(),
            )
        });
        checks.push(if check_descending_chain_power(g, h)? {
            SuiteCheck::ok("descending_chain_power_trivial", format!("h={h}"))
        } else {
            SuiteCheck::fail(
                "descending_chain_power_trivial",
                format!("h={h}"),
                "power differs from identity".to_string(),
            )
        });
    }

    let passed = checks.iter().all(|c| c.pass);
    Ok(HomologySuiteReport { g, level: "homology-level verification (necessary conditions)", checks, passed })
}
