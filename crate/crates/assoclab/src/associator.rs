//! The Drinfeld-type associator coefficient table.
//!
//! `build_kz` produces the coefficient c(w) of every word up to a
//! weight cap: convergent words get (-1)^depth times the zeta value of
//! their classical reading, divergent words get the unique
//! shuffle-character extension with c(L0) = c(L1) = 0 (peel leading L1
//! letters with the shuffle against "1", then trailing L0 letters with
//! the shuffle against "0"; both use only same-weight lookups).
//!
//! The sign convention is fixed by checking c((01)^n) against
//! (-1)^n pi^(2n)/(2n+1)! for n = 1..=6; a table that fails every
//! candidate convention aborts the build.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mzv::MzvEngine;
use crate::series::float::AppFloat;
use crate::series::json;
use crate::series::matrix::Mat2;
use crate::series::mseries::MSeries;
use crate::series::nc::NCSeries;
use crate::series::scalar::ScalarRing;
use crate::tolerances;
use crate::words::{composition_to_word, shuffle, Composition, Word};

#[derive(Clone, Debug)]
pub struct KzTable {
    pub weight: u32,
    pub digits: u32,
    pub prec: u32,
    pub convention: String,
    coeffs: BTreeMap<Word, AppFloat>,
}

pub fn build_kz(weight: u32, digits: u32) -> Result<KzTable> {
    let prec = tolerances::bits_for_digits(digits);
    let engine = MzvEngine::new(weight, prec);
    let mut coeffs: BTreeMap<Word, AppFloat> = BTreeMap::new();
    for wt in 1..=weight {
        for word in Word::all_of_len(wt) {
            regularized(&engine, word, &mut coeffs)?;
        }
    }
    let mut table = KzTable {
        weight,
        digits,
        prec,
        convention: String::new(),
        coeffs,
    };
    table.convention = calibrate(&mut table)?;
    Ok(table)
}

/// c for one word, memoized; recursion strictly reduces the pair
/// (leading L1 count, trailing L0 count) within a fixed weight.
fn regularized(
    engine: &MzvEngine,
    word: Word,
    memo: &mut BTreeMap<Word, AppFloat>,
) -> Result<AppFloat> {
    if word.is_empty() {
        return Ok(AppFloat::from_int(1));
    }
    if let Some(v) = memo.get(&word) {
        return Ok(v.clone());
    }
    let value = if word.is_convergent() {
        let z = engine.zeta_word(&word)?;
        if word.depth() % 2 == 1 {
            z.neg()
        } else {
            z
        }
    } else if word.len() == 1 {
        AppFloat::zero()
    } else {
        let leading = (0..word.len())
            .take_while(|&i| word.letter(i))
            .count() as i64;
        let (single, rest, mult) = if leading > 0 {
            (Word::parse("1").unwrap(), word.suffix(1), leading)
        } else {
            let trailing = (0..word.len())
                .rev()
                .take_while(|&i| !word.letter(i))
                .count() as i64;
            (
                Word::parse("0").unwrap(),
                word.prefix(word.len() - 1),
                trailing,
            )
        };
        // 0 = c(single) c(rest) = sum over the shuffle; the target word
        // appears with multiplicity `mult`.
        let mut acc = AppFloat::zero();
        for (u, m) in shuffle(&single, &rest).iter() {
            if *u == word {
                continue;
            }
            let cu = regularized(engine, *u, memo)?;
            acc = acc.add(&AppFloat::from_rational(m, engine.prec() + 16).mul(&cu));
        }
        acc.neg().div_i64(mult)
    };
    memo.insert(word, value.clone());
    Ok(value)
}

/// Candidate reindexings of the raw table.
const CONVENTIONS: [&str; 4] = ["identity", "reverse", "odd-sign", "reverse-odd-sign"];

fn apply_convention(word: &Word, c: &AppFloat, name: &str) -> (Word, AppFloat) {
    let (w2, flip) = match name {
        "identity" => (*word, false),
        "reverse" => (word.reverse(), false),
        "odd-sign" => (*word, word.depth() % 2 == 1),
        "reverse-odd-sign" => (word.reverse(), word.depth() % 2 == 1),
        _ => unreachable!("unknown convention"),
    };
    (w2, if flip { c.neg() } else { c.clone() })
}

/// Pick the convention under which c((01)^n) = (-1)^n pi^(2n)/(2n+1)!
/// holds for n = 1..=6 at the calibration tolerance, rewrite the table
/// in it, and return its tag.
fn calibrate(table: &mut KzTable) -> Result<String> {
    let prec = table.prec;
    let nmax = (table.weight / 2).min(6);
    if nmax < 1 {
        return Ok("identity".to_string());
    }
    let pi = crate::series::transcend::pi(prec + 32);
    for name in CONVENTIONS {
        let mut ok = true;
        for n in 1..=nmax {
            let mut word = Word::empty();
            for _ in 0..n {
                word = word.push(false).push(true);
            }
            let (lookup, flip_needed) = match name {
                "identity" => (word, false),
                "reverse" => (word.reverse(), false),
                "odd-sign" => (word, n % 2 == 1),
                "reverse-odd-sign" => (word.reverse(), n % 2 == 1),
                _ => unreachable!(),
            };
            let raw = table
                .coeffs
                .get(&lookup)
                .cloned()
                .ok_or(Error::Calibration)?;
            let got = if flip_needed { raw.neg() } else { raw };
            let mut fact = num_bigint::BigInt::from(1);
            for i in 1..=(2 * n + 1) as i64 {
                fact *= i;
            }
            let mut want = pi.pow_int(2 * n as i64)?.div_int(&fact, prec + 32);
            if n % 2 == 1 {
                want = want.neg();
            }
            if !got.sub(&want).certainly_below(tolerances::CALIBRATION) {
                ok = false;
                break;
            }
        }
        if ok {
            if name != "identity" {
                let old = std::mem::take(&mut table.coeffs);
                for (w, c) in &old {
                    let (w2, c2) = apply_convention(w, c, name);
                    table.coeffs.insert(w2, c2);
                }
            }
            return Ok(name.to_string());
        }
    }
    Err(Error::Calibration)
}

impl KzTable {
    /// Coefficient of a word (empty word: exactly 1).
    pub fn coeff(&self, w: &Word) -> Result<AppFloat> {
        if w.is_empty() {
            return Ok(AppFloat::from_int(1));
        }
        self.coeffs
            .get(w)
            .cloned()
            .ok_or_else(|| Error::WeightOverflow {
                requested: w.weight(),
                available: self.weight,
            })
    }

    /// Formal zeta of a composition: the coefficient of its word under
    /// the table's own indexing (last part's block leftmost).
    pub fn zeta_phi(&self, c: &Composition) -> Result<AppFloat> {
        self.coeff(&composition_to_word(c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &AppFloat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The table as a noncommutative series with unit constant term.
    pub fn as_series(&self) -> NCSeries<AppFloat> {
        let mut s = NCSeries::zero(self.weight);
        s.set(Word::empty(), AppFloat::from_int(1));
        for (w, c) in &self.coeffs {
            s.set(*w, c.clone());
        }
        s
    }

    /// Series of coefficients c(w . letter), indexed by w.
    pub fn right_factor(&self, letter: bool) -> NCSeries<AppFloat> {
        let mut s = NCSeries::zero(self.weight - 1);
        for (w, c) in &self.coeffs {
            if w.last() == Some(letter) {
                s.set(w.prefix(w.len() - 1), c.clone());
            }
        }
        s
    }
}

/// Commutative image: L0 -> var 0, L1 -> var 1.
pub fn abelianize(series: &NCSeries<AppFloat>, trunc: u32) -> MSeries<AppFloat> {
    let mut out = MSeries::zero_t(trunc);
    for (w, c) in series.iter() {
        let ones = w.depth() as u8;
        let zeros = (w.weight() - w.depth()) as u8;
        out.add_to(vec![zeros, ones], c);
    }
    out
}

/// Substitute matrices for the letters: sum over words of
/// embed(c(w)) P_{w_1} ... P_{w_n}, including the empty word as the
/// identity. Subtrees are pruned as soon as the running product is
/// zero (with positive-min-degree series entries this bounds the
/// effective depth by the truncation order).
pub fn phi_of_matrices<S: ScalarRing>(
    series: &NCSeries<AppFloat>,
    p0: &Mat2<S>,
    p1: &Mat2<S>,
    embed: &impl Fn(&AppFloat) -> S,
) -> Mat2<S> {
    let mut acc = Mat2::zero();
    let ident = Mat2::identity();
    rec_phi(series, Word::empty(), &ident, p0, p1, embed, &mut acc);
    acc
}

fn rec_phi<S: ScalarRing>(
    series: &NCSeries<AppFloat>,
    word: Word,
    prod: &Mat2<S>,
    p0: &Mat2<S>,
    p1: &Mat2<S>,
    embed: &impl Fn(&AppFloat) -> S,
    acc: &mut Mat2<S>,
) {
    let c = series.coeff(&word);
    if !c.is_exact_zero() {
        *acc = acc.add(&prod.scale(&embed(&c)));
    }
    if word.weight() >= series.max_weight() || prod.is_zero() {
        return;
    }
    rec_phi(series, word.push(false), &prod.mul(p0), p0, p1, embed, acc);
    rec_phi(series, word.push(true), &prod.mul(p1), p0, p1, embed, acc);
}

/// Group-like rational stand-in: exp of a small Lie element.
pub fn mock_associator(weight: u32) -> NCSeries<BigRational> {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let mut e0 = NCSeries::zero(weight);
    e0.set(Word::parse("0").unwrap(), r(1, 1));
    let mut e1 = NCSeries::zero(weight);
    e1.set(Word::parse("1").unwrap(), r(1, 1));
    let bracket = |a: &NCSeries<BigRational>, b: &NCSeries<BigRational>| {
        a.mul(b).sub(&b.mul(a))
    };
    let c01 = bracket(&e0, &e1);
    let c001 = bracket(&e0, &c01);
    let c011 = bracket(&c01, &e1);
    let lie = e0
        .scale(&r(1, 2))
        .add(&e1.scale(&r(-1, 3)))
        .add(&c01.scale(&r(2, 5)))
        .add(&c001.scale(&r(1, 7)))
        .add(&c011.scale(&r(-3, 4)));
    lie.exp().expect("zero constant term")
}

#[derive(Serialize, Deserialize)]
struct TableRecord {
    word: String,
    mid: String,
    rad: String,
    bits: u32,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    weight: u32,
    digits: u32,
    convention: String,
    coefficients: Vec<TableRecord>,
}

impl KzTable {
    pub fn to_json_string(&self) -> String {
        let out_digits = (self.prec as f64 / tolerances::BITS_PER_DIGIT).ceil() as usize + 2;
        let coefficients = self
            .coeffs
            .iter()
            .map(|(w, c)| {
                let (mid, rad) = json::ball_to_strings(c, out_digits);
                TableRecord {
                    word: w.to_string(),
                    mid,
                    rad,
                    bits: self.prec,
                }
            })
            .collect();
        let file = TableFile {
            weight: self.weight,
            digits: self.digits,
            convention: self.convention.clone(),
            coefficients,
        };
        serde_json::to_string_pretty(&file).expect("table serialization cannot fail") + "\n"
    }

    pub fn from_json_str(s: &str) -> Result<KzTable> {
        let file: TableFile = serde_json::from_str(s)?;
        let prec = tolerances::bits_for_digits(file.digits);
        let mut coeffs = BTreeMap::new();
        for rec in &file.coefficients {
            let word = Word::parse(&rec.word)?;
            if word.is_empty() || word.weight() > file.weight {
                return Err(Error::Table(format!(
                    "word {} outside table weight {}",
                    rec.word, file.weight
                )));
            }
            let value = json::ball_from_strings(&rec.mid, &rec.rad, rec.bits.min(prec))?;
            if coeffs.insert(word, value).is_some() {
                return Err(Error::Table(format!("duplicate word {}", rec.word)));
            }
        }
        // completeness: every word of weight 1..=weight must be present
        let expect: usize = (1..=file.weight).map(|n| 1usize << n).sum();
        if coeffs.len() != expect {
            return Err(Error::Table(format!(
                "table has {} records, expected {expect}",
                coeffs.len()
            )));
        }
        Ok(KzTable {
            weight: file.weight,
            digits: file.digits,
            prec,
            convention: file.convention.clone(),
            coeffs,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        json::write_atomic(path, &self.to_json_string())
    }

    pub fn read(path: &Path) -> Result<KzTable> {
        let s = std::fs::read_to_string(path)?;
        KzTable::from_json_str(&s)
    }
}
