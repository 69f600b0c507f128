//! Exact upper bounds on `scl` of separating twists.
//!
//! For genus `g = kh + r` (Euclidean division, `1 <= h <= g/2`) the bound is
//!
//! ```text
//! B(g,h) = h(2h+1)(2g-2h+1) / ((g+1)(2g+1) - (2g-2h+1)r) * (B(g,r)/(2r+1) + 1)
//! ```
//!
//! anchored at `B(g,0) = B(g,g) = 0` (the type-0 curve bounds a disk) and
//! extended to `h > g/2` through the conjugacy `t_{s_h} ~ t_{s_{g-h}}`. The
//! recursion terminates because `r < h`. Everything here is exact rational
//! arithmetic; decimal output is rendering only.

use crate::error::{Error, Result};
use crate::rational::{decimal_string, rat_int, ratio_serde, Rational};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::HashMap;

/// Euclidean decomposition `g = k·h + r` with `0 <= r <= h-1`. The constraint
/// `r < h` pins `(k, r)` uniquely, and `h <= g/2` forces `k >= 2`.
pub fn decompose(g: usize, h: usize) -> Result<(usize, usize)> {
    if g < 2 {
        return Err(Error::GenusOutOfRange { g, min: 2 });
    }
    if h == 0 || 2 * h > g {
        return Err(Error::SeparatingTypeOutOfRange { g, h, lo: 1, hi: g / 2 });
    }
    Ok((g / h, g % h))
}

fn recursion_coefficient(g: usize, h: usize, r: usize) -> Rational {
    let num = BigInt::from(h * (2 * h + 1) * (2 * g - 2 * h + 1));
    let den = BigInt::from((g + 1) * (2 * g + 1) - (2 * g - 2 * h + 1) * r);
    Rational::new(num, den)
}

/// One level of the recursion: the separating type evaluated, its Euclidean
/// data, and the exact value at that level.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub h: usize,
    pub k: Option<usize>,
    pub r: Option<usize>,
    #[serde(with = "ratio_serde")]
    pub value: Rational,
}

/// An evaluated bound together with the recursion path that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct BoundResult {
    pub g: usize,
    pub h: usize,
    #[serde(with = "ratio_serde")]
    pub value: Rational,
    /// True when `h > g/2` and the value came from the conjugacy symmetry
    /// `B(g,h) = B(g,g-h)`.
    pub via_symmetry: bool,
    /// `(k, r)` of the top-level decomposition; absent for `h = 0` and
    /// `h = g`.
    pub decomposition: Option<(usize, usize)>,
    pub trace: Vec<TraceEntry>,
}

impl BoundResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bound result serializes")
    }
}

/// Shared memo for sweeps; `bound` uses a fresh one per call.
#[derive(Default)]
pub struct BoundCache {
    values: HashMap<(usize, usize), Rational>,
}

impl BoundCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn value(&mut self, g: usize, h: usize) -> Rational {
        debug_assert!(2 * h <= g);
        if h == 0 {
            return rat_int(0);
        }
        if let Some(v) = self.values.get(&(g, h)) {
            return v.clone();
        }
        let r = g % h;
        let inner = self.value(g, r) / rat_int(2 * r as i64 + 1) + rat_int(1);
        let v = recursion_coefficient(g, h, r) * inner;
        self.values.insert((g, h), v.clone());
        v
    }

    /// Exact bound value for `0 <= h <= g`, `g >= 2`.
    pub fn bound_value(&mut self, g: usize, h: usize) -> Result<Rational> {
        if g < 2 {
            return Err(Error::GenusOutOfRange { g, min: 2 });
        }
        if h > g {
            return Err(Error::SeparatingTypeOutOfRange { g, h, lo: 0, hi: g });
        }
        let eff = h.min(g - h);
        Ok(self.value(g, eff))
    }
}

/// Full evaluation of the recursive bound, including the recursion trace.
pub fn bound(g: usize, h: usize) -> Result<BoundResult> {
    let mut cache = BoundCache::new();
    let value = cache.bound_value(g, h)?;
    let via_symmetry = 2 * h > g && h < g;
    let eff = h.min(g - h);
    let mut trace = Vec::new();
    let mut level = eff;
    loop {
        if level == 0 {
            trace.push(TraceEntry { h: 0, k: None, r: None, value: rat_int(0) });
            break;
        }
        let (k, r) = (g / level, g % level);
        trace.push(TraceEntry {
            h: level,
            k: Some(k),
            r: Some(r),
            value: cache.bound_value(g, level)?,
        });
        level = r;
    }
    let decomposition = (eff > 0).then(|| (g / eff, g % eff));
    Ok(BoundResult { g, h, value, via_symmetry, decomposition, trace })
}

/// Closed form for type-1 curves: `3(2g-1) / ((g+1)(2g+1))`.
pub fn type_one_closed_form(g: usize) -> Result<Rational> {
    if g < 2 {
        return Err(Error::GenusOutOfRange { g, min: 2 });
    }
    Ok(Rational::new(
        BigInt::from(3 * (2 * g - 1)),
        BigInt::from((g + 1) * (2 * g + 1)),
    ))
}

/// Closed form for the divisible case `g = kh`:
/// `h(2h+1)(2g-2h+1) / ((g+1)(2g+1))`.
pub fn divisible_closed_form(g: usize, h: usize) -> Result<Rational> {
    decompose(g, h)?;
    if !g.is_multiple_of(h) {
        return Err(Error::NonDivisor { g, h });
    }
    Ok(Rational::new(
        BigInt::from(h * (2 * h + 1) * (2 * g - 2 * h + 1)),
        BigInt::from((g + 1) * (2 * g + 1)),
    ))
}

/// Verifies, in exact arithmetic, that the per-block defect coefficients
/// aggregate to the displayed fraction:
///
/// ```text
/// 1/(4(g-h)+2) + 2/(4h) + (k-1)/(4h+2)
///   = ((g+1)(2g+1) - (2g-2h+1)r) / (2h(2h+1)(2g-2h+1))
/// ```
pub fn coefficient_identity_check(g: usize, h: usize) -> Result<bool> {
    let (k, r) = decompose(g, h)?;
    let lhs = Rational::new(BigInt::from(1), BigInt::from(4 * (g - h) + 2))
        + Rational::new(BigInt::from(2), BigInt::from(4 * h))
        + Rational::new(BigInt::from(k - 1), BigInt::from(4 * h + 2));
    let rhs = Rational::new(
        BigInt::from((g + 1) * (2 * g + 1) - (2 * g - 2 * h + 1) * r),
        BigInt::from(2 * h * (2 * h + 1) * (2 * g - 2 * h + 1)),
    );
    Ok(lhs == rhs)
}

/// Known lower bound `1/(18g+6)`, kept as reference data for consistency
/// checks (an upper bound may never drop below it).
pub fn reference_lower_bound(g: usize) -> Result<Rational> {
    if g < 2 {
        return Err(Error::GenusOutOfRange { g, min: 2 });
    }
    Ok(Rational::new(BigInt::from(1), BigInt::from(18 * g + 6)))
}

/// Known upper bound `g/(4g²+6g+2)` for twists along nonseparating curves,
/// kept as reference data.
pub fn reference_nonsep_upper(g: usize) -> Result<Rational> {
    if g < 1 {
        return Err(Error::GenusOutOfRange { g, min: 1 });
    }
    Ok(Rational::new(BigInt::from(g), BigInt::from(4 * g * g + 6 * g + 2)))
}

/// Which separating types a table sweep covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeSelection {
    /// Every nontrivial type `1..=g-1` at each genus.
    All,
    One(usize),
    List(Vec<usize>),
}

impl TypeSelection {
    fn types_for(&self, g: usize) -> Vec<usize> {
        match self {
            TypeSelection::All => (1..g).collect(),
            TypeSelection::One(h) => vec![*h].into_iter().filter(|&h| h <= g).collect(),
            TypeSelection::List(hs) => {
                let mut hs: Vec<usize> = hs.iter().copied().filter(|&h| h <= g).collect();
                hs.sort_unstable();
                hs.dedup();
                hs
            }
        }
    }
}

/// One `(g, h)` cell of a bound table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub g: usize,
    pub h: usize,
    pub k: Option<usize>,
    pub r: Option<usize>,
    #[serde(with = "ratio_serde")]
    pub bound: Rational,
    pub bound_decimal: String,
    #[serde(with = "ratio_serde")]
    pub lower_ref: Rational,
    #[serde(with = "ratio_serde")]
    pub nonsep_ref: Rational,
}

pub const TABLE_CSV_HEADER: &str =
    "g,h,k,r,bound_num,bound_den,bound_decimal,lower_num,lower_den,nonsep_num,nonsep_den";

impl TableRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.g,
            self.h,
            opt(self.k),
            opt(self.r),
            self.bound.numer(),
            self.bound.denom(),
            self.bound_decimal,
            self.lower_ref.numer(),
            self.lower_ref.denom(),
            self.nonsep_ref.numer(),
            self.nonsep_ref.denom(),
        )
    }
}

/// Bound table over a genus range, sorted by `(g, h)`. Types outside
/// `0..=g` are skipped per genus; an entirely empty sweep is an error.
pub fn table(
    g_min: usize,
    g_max: usize,
    selection: &TypeSelection,
    precision: usize,
) -> Result<Vec<TableRow>> {
    if g_min < 2 {
        return Err(Error::GenusOutOfRange { g: g_min, min: 2 });
    }
    if g_max < g_min {
        return Err(Error::EmptyRange { what: format!("g range {g_min}..{g_max}") });
    }
    let mut cache = BoundCache::new();
    let mut rows = Vec::new();
    for g in g_min..=g_max {
        let lower = reference_lower_bound(g)?;
        let nonsep = reference_nonsep_upper(g)?;
        for h in selection.types_for(g) {
            let value = cache.bound_value(g, h)?;
            let eff = h.min(g - h);
            let dec = (eff > 0).then(|| (g / eff, g % eff));
            rows.push(TableRow {
                g,
                h,
                k: dec.map(|d| d.0),
                r: dec.map(|d| d.1),
                bound_decimal: decimal_string(&value, precision),
                bound: value,
                lower_ref: lower.clone(),
                nonsep_ref: nonsep.clone(),
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyRange { what: "no (g,h) cells selected".to_string() });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(5, 2).unwrap(), (2, 1));
        assert_eq!(decompose(6, 2).unwrap(), (3, 0));
        assert_eq!(decompose(7, 3).unwrap(), (2, 1));
        assert!(decompose(5, 0).is_err());
        assert!(decompose(5, 3).is_err());
        assert!(decompose(1, 1).is_err());
        // k >= 2 always
        for g in 2..40 {
            for h in 1..=g / 2 {
                let (k, r) = decompose(g, h).unwrap();
                assert!(k >= 2);
                assert_eq!(g, k * h + r);
                assert!(r < h);
            }
        }
    }

    #[test]
    fn bound_spot_values() {
        assert_eq!(bound(2, 1).unwrap().value, rat(3, 5));
        assert_eq!(bound(6, 2).unwrap().value, rat(90, 91));
        assert_eq!(bound(5, 2).unwrap().value, rat(875, 649));
        assert_eq!(bound(5, 1).unwrap().value, rat(9, 22));
        assert_eq!(bound(9, 0).unwrap().value, rat(0, 1));
        assert_eq!(bound(9, 9).unwrap().value, rat(0, 1));
        assert!(bound(1, 0).is_err());
        assert!(bound(4, 5).is_err());
    }

    #[test]
    fn bound_symmetry_and_trace() {
        let direct = bound(5, 2).unwrap();
        let mirrored = bound(5, 3).unwrap();
        assert_eq!(direct.value, mirrored.value);
        assert!(!direct.via_symmetry);
        assert!(mirrored.via_symmetry);
        assert_eq!(mirrored.decomposition, Some((2, 1)));

        // recursion path for (5,2): h=2 -> r=1 -> r=0
        let hs: Vec<usize> = direct.trace.iter().map(|t| t.h).collect();
        assert_eq!(hs, vec![2, 1, 0]);
        assert_eq!(direct.trace[1].value, rat(9, 22));
        assert_eq!(direct.trace[2].value, rat(0, 1));
    }

    #[test]
    fn corollaries_match_recursion() {
        assert_eq!(type_one_closed_form(2).unwrap(), rat(3, 5));
        assert_eq!(type_one_closed_form(3).unwrap(), rat(15, 28));
        assert_eq!(divisible_closed_form(6, 2).unwrap(), rat(90, 91));
        assert_eq!(divisible_closed_form(4, 2).unwrap(), rat(10, 9));
        assert!(divisible_closed_form(5, 2).is_err());

        let mut cache = BoundCache::new();
        for g in 2..=60 {
            assert_eq!(cache.bound_value(g, 1).unwrap(), type_one_closed_form(g).unwrap());
            for h in 1..=g / 2 {
                if g % h == 0 {
                    assert_eq!(cache.bound_value(g, h).unwrap(), divisible_closed_form(g, h).unwrap());
                }
            }
        }
    }

    #[test]
    fn coefficient_identity_examples() {
        // (5,2): both sides equal 59/140
        let lhs = rat(1, 14) + rat(2, 8) + rat(1, 10);
        assert_eq!(lhs, rat(59, 140));
        assert!(coefficient_identity_check(5, 2).unwrap());
        // (6,3): both sides equal 13/42
        let lhs = rat(1, 14) + rat(2, 12) + rat(1, 14);
        assert_eq!(lhs, rat(13, 42));
        assert!(coefficient_identity_check(6, 3).unwrap());
        assert!(coefficient_identity_check(6, 4).is_err());
    }

    #[test]
    fn reference_values() {
        assert_eq!(reference_lower_bound(2).unwrap(), rat(1, 42));
        assert_eq!(reference_lower_bound(10).unwrap(), rat(1, 186));
        assert_eq!(reference_nonsep_upper(1).unwrap(), rat(1, 12));
        assert_eq!(reference_nonsep_upper(2).unwrap(), rat(1, 15));
        assert_eq!(reference_nonsep_upper(5).unwrap(), rat(5, 132));
        assert!(reference_lower_bound(1).is_err());
        assert!(reference_nonsep_upper(0).is_err());
    }

    #[test]
    fn table_contract() {
        let rows = table(2, 2, &TypeSelection::All, 8).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].g, rows[0].h), (2, 1));

        let rows = table(2, 10, &TypeSelection::All, 8).unwrap();
        let mut sorted = rows.iter().map(|r| (r.g, r.h)).collect::<Vec<_>>();
        sorted.sort_unstable();
        assert_eq!(sorted, rows.iter().map(|r| (r.g, r.h)).collect::<Vec<_>>());
        let cell = rows.iter().find(|r| (r.g, r.h) == (6, 2)).unwrap();
        assert_eq!(cell.bound, rat(90, 91));
        assert_eq!(cell.lower_ref, rat(1, 114));
        assert_eq!(cell.bound_decimal, "0.98901099");
        assert_eq!(
            cell.to_csv(),
            "6,2,3,0,90,91,0.98901099,1,114,3,91"
        );

        assert!(table(3, 2, &TypeSelection::All, 8).is_err());
        assert!(table(2, 4, &TypeSelection::One(9), 8).is_err());

        // h=0 and h=g rows carry no decomposition
        let rows = table(3, 3, &TypeSelection::List(vec![0, 3, 1]), 6).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].k, None);
        assert_eq!(rows[2].k, None);
    }

    #[test]
    fn values_stay_in_lowest_terms() {
        use num_integer::Integer;
        let mut cache = BoundCache::new();
        for g in 2..=30 {
            for h in 0..=g {
                let v = cache.bound_value(g, h).unwrap();
                assert!(v.denom() > &BigInt::from(0));
                assert_eq!(v.numer().gcd(v.denom()), BigInt::from(1));
            }
        }
    }
}
