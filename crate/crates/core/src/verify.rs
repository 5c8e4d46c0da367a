//! Verification suites: every brute-force result beside its closed form,
//! collected into a deterministic report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::classify::CurveGeometry;
use crate::classnum::{hasse_range, predict_smooth_enumerator, trace_table};
use crate::closed_forms::assemble::{free_part, hamming_affine_conic, hamming_conic, hamming_cubic};
use crate::closed_forms::{
    assemble_second_enumerator, fixed_point_proportion, macwilliams, macwilliams2, Family, PairCase, Registry, Slot,
};
use crate::codes::{build_code, dual_code, Evaluation};
use crate::configs::{collinear_dual_counts, ConfigScanner};
use crate::engine::{
    cubic_scan, hamming_enumerator, pair_census, second_enumerator, support_r_enumerators, Budget, CensusTable,
    CubicScan,
};
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::geometry::monomial_count;

/// Largest dual code walked directly, in codewords.
const DIRECT_DUAL_LIMIT: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Codes,
    Duals,
    Configs,
    ClassNumbers,
    Appendix,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Codes, Suite::Duals, Suite::Configs, Suite::ClassNumbers, Suite::Appendix, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Codes => "codes",
            Suite::Duals => "duals",
            Suite::Configs => "configs",
            Suite::ClassNumbers => "classnumbers",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }

    /// Criteria run by the suite, in order.
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Codes => &[1, 2, 3, 4, 5],
            Suite::Duals => &[6, 7],
            Suite::Configs => &[9, 12],
            Suite::ClassNumbers => &[10],
            Suite::Appendix => &[8],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
        }
    }

    pub fn default_qs(self) -> Vec<u64> {
        match self {
            Suite::Duals | Suite::Appendix => vec![3, 4],
            _ => vec![3, 4, 5, 7],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Short title of each criterion.
pub fn criterion_title(n: u8) -> &'static str {
    match n {
        1 => "conic-conic census",
        2 => "affine conic-conic census",
        3 => "conic-cubic census",
        4 => "cubic-cubic census",
        5 => "Hamming enumerators",
        6 => "MacWilliams identities",
        7 => "direct dual enumeration",
        8 => "nine- and eight-point configurations",
        9 => "collinear dual structure",
        10 => "smooth cubics by trace",
        11 => "structural properties",
        12 => "dual codewords by support scan",
        _ => "unknown",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    #[serde(serialize_with = "decimal")]
    pub criterion: u8,
    #[serde(serialize_with = "decimal")]
    pub q: u64,
    pub formula: String,
    pub brute_force: String,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

fn decimal<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Field construction used for one `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldFingerprint {
    #[serde(serialize_with = "decimal")]
    pub q: u64,
    pub modulus: String,
    /// SHA-256 of the point coordinates in index order.
    pub point_order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: String,
    pub fields: Vec<FieldFingerprint>,
    pub rows: Vec<CheckRow>,
    pub skipped: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    /// The verdict payload; per-row timings only under `"timing"` when asked.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data serializes");
        if timing {
            let t: Vec<Value> = self
                .rows
                .iter()
                .map(|r| json!({ "check": r.check, "q": r.q.to_string(), "elapsed_ms": r.elapsed_ms.to_string() }))
                .collect();
            v["timing"] = Value::Array(t);
        }
        v
    }

    /// Header `check,criterion,q,formula,brute_force,verdict`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,criterion,q,formula,brute_force,verdict\n");
        for r in &self.rows {
            let verdict = if r.pass { "pass" } else { "fail" };
            out.push_str(&format!(
                "{},{},{},\"{}\",\"{}\",{verdict}\n",
                r.check, r.criterion, r.q, r.formula, r.brute_force
            ));
        }
        out
    }

    /// Rows grouped by criterion.
    pub fn by_criterion(&self) -> BTreeMap<u8, Vec<&CheckRow>> {
        let mut out: BTreeMap<u8, Vec<&CheckRow>> = BTreeMap::new();
        for r in &self.rows {
            out.entry(r.criterion).or_default().push(r);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub qs: Vec<u64>,
    pub extended: bool,
    pub budget: Budget,
}

fn enum_string(w: &WeightEnumerator) -> String {
    w.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn big(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn case_families(case: PairCase) -> (Family, Family) {
    match case {
        PairCase::ConicConic => (Family::CommonConicConic, Family::JointConicConic),
        PairCase::AffineConic => (Family::CommonAffineConic, Family::JointAffineConic),
        PairCase::ConicCubic => (Family::CommonConicCubic, Family::JointConicCubic),
        PairCase::CubicCubic => (Family::CommonCubicCubic, Family::JointCubicCubic),
    }
}

fn case_criterion(case: PairCase) -> u8 {
    match case {
        PairCase::ConicConic => 1,
        PairCase::AffineConic => 2,
        PairCase::ConicCubic => 3,
        PairCase::CubicCubic => 4,
    }
}

fn case_evaluation(case: PairCase) -> Evaluation {
    match case {
        PairCase::AffineConic => Evaluation::Affine,
        _ => Evaluation::Projective,
    }
}

/// The closed-form case for a census shape, if one exists.
pub fn case_for(d: u32, e: u32, evaluation: Evaluation) -> Option<PairCase> {
    PairCase::ALL.into_iter().find(|c| c.degrees() == (d, e) && case_evaluation(*c) == evaluation)
}

fn int_row(check: String, criterion: u8, q: u64, formula: &BigInt, brute: &BigInt, t: Instant) -> CheckRow {
    CheckRow {
        check,
        criterion,
        q,
        formula: formula.to_string(),
        brute_force: brute.to_string(),
        pass: formula == brute,
        elapsed_ms: t.elapsed().as_millis(),
    }
}

fn enum_row(
    check: String,
    criterion: u8,
    q: u64,
    formula: &WeightEnumerator,
    brute: &WeightEnumerator,
    t: Instant,
) -> CheckRow {
    CheckRow {
        check,
        criterion,
        q,
        formula: enum_string(formula),
        brute_force: enum_string(brute),
        pass: formula == brute,
        elapsed_ms: t.elapsed().as_millis(),
    }
}

/// A census beside its closed forms: every `c_k`, the vanishing of `c_k`
/// past the intersection bound, the common-component and free parts, the
/// assembled second enumerator and conservation.
pub fn census_rows(case: PairCase, census: &CensusTable, t: Instant) -> Result<Vec<CheckRow>> {
    let crit = case_criterion(case);
    let name = case.name();
    let q = u64::from(census.q);
    let reg = Registry::global();
    let mut rows = Vec::new();
    for k in 0..case.unknowns() {
        let id = format!("c{k}_{name}");
        let formula = reg.eval_count(&id, q)?;
        rows.push(int_row(id, crit, q, &formula, &big(census.c(k).clone()), t));
    }
    let beyond: BigInt = census.no_common.iter().skip(case.unknowns()).map(|c| big(c.clone())).sum();
    rows.push(int_row(format!("c_beyond_{name}"), crit, q, &BigInt::zero(), &beyond, t));
    let n = case.length(q);
    let common = reg.family_enumerator(case_families(case).0, q, n)?;
    rows.push(enum_row(format!("common_{name}"), crit, q, &common, &census.common_enumerator(), t));
    let mut free_brute = WeightEnumerator::zero(n);
    for (k, c) in census.no_common.iter().enumerate() {
        free_brute.add_to_x(k, big(c.clone()));
    }
    rows.push(enum_row(format!("free_{name}"), crit, q, &free_part(case, q)?, &free_brute, t));
    let second = census.second_enumerator();
    rows.push(enum_row(format!("second_{name}"), crit, q, &assemble_second_enumerator(case, q)?, &second, t));
    if case == PairCase::ConicConic {
        let closed = reg.family_enumerator(Family::SecondConicConic, q, n)?;
        rows.push(enum_row("second_conic_closed_form".into(), crit, q, &closed, &second, t));
    }
    let total = big(census.total());
    rows.push(int_row(format!("conservation_{name}"), 11, q, &big(census.expected_total()), &total, t));
    Ok(rows)
}

/// Runs criteria with shared caches of geometries, censuses and scans.
pub struct Verifier {
    opts: VerifyOptions,
    geometries: BTreeMap<u64, CurveGeometry>,
    censuses: BTreeMap<(u64, &'static str), CensusTable>,
    hammings: BTreeMap<(u64, &'static str), WeightEnumerator>,
    scans: BTreeMap<u64, CubicScan>,
    rows: Vec<CheckRow>,
    skipped: Vec<String>,
}

impl Verifier {
    pub fn new(opts: VerifyOptions) -> Self {
        Verifier {
            opts,
            geometries: BTreeMap::new(),
            censuses: BTreeMap::new(),
            hammings: BTreeMap::new(),
            scans: BTreeMap::new(),
            rows: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn run_suite(mut self, suite: Suite) -> Result<VerificationReport> {
        for &c in suite.criteria() {
            self.run_criterion(c)?;
        }
        Ok(self.report(suite.name()))
    }

    pub fn report(self, suite: &str) -> VerificationReport {
        let fields = self
            .geometries
            .iter()
            .map(|(&q, g)| {
                let field = g.field();
                let mut hasher = Sha256::new();
                for p in g.plane().points() {
                    for &c in &p.coords {
                        hasher.update(field.code(c).to_le_bytes());
                    }
                }
                let point_order = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
                FieldFingerprint { q, modulus: field.modulus_string(), point_order }
            })
            .collect();
        let pass = self.rows.iter().all(|r| r.pass);
        VerificationReport {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            fields,
            rows: self.rows,
            skipped: self.skipped,
            pass,
        }
    }

    pub fn rows(&self) -> &[CheckRow] {
        &self.rows
    }

    pub fn run_criterion(&mut self, n: u8) -> Result<()> {
        let qs = self.opts.qs.clone();
        match n {
            1..=4 => {
                let case = PairCase::ALL[n as usize - 1];
                for q in qs {
                    if self.census_admissible(case, q) {
                        self.check_census(case, q)?;
                    } else {
                        self.skip(n, q, "beyond the census budget");
                    }
                }
            }
            5 => {
                for q in qs.into_iter().filter(|&q| q >= 3) {
                    self.check_hamming(q)?;
                }
            }
            6 => {
                for q in qs.into_iter().filter(|&q| q >= 3) {
                    self.check_macwilliams(q)?;
                }
            }
            7 => {
                for q in qs.into_iter().filter(|&q| q >= 3) {
                    self.check_direct_duals(q)?;
                }
            }
            8 => {
                for q in qs {
                    if q <= 4 || (q == 5 && self.opts.extended) {
                        self.check_configurations(q)?;
                    } else {
                        self.skip(n, q, "subset scans run for q <= 4 (q = 5 when extended)");
                    }
                }
            }
            9 => {
                for q in qs.into_iter().filter(|&q| q >= 3) {
                    self.check_collinear(q)?;
                }
            }
            10 => {
                for q in qs.into_iter().filter(|&q| q >= 3) {
                    self.check_smooth_traces(q)?;
                }
            }
            11 => self.check_structure()?,
            12 => {
                for q in qs {
                    if (3..=4).contains(&q) {
                        self.check_support_scans(q)?;
                    } else {
                        self.skip(n, q, "support scans run for q in {3, 4}");
                    }
                }
            }
            _ => return Err(Error::InvalidArgument(format!("unknown criterion {n}"))),
        }
        Ok(())
    }

    fn skip(&mut self, criterion: u8, q: u64, why: &str) {
        self.skipped.push(format!("criterion {criterion} q={q}: {why}"));
    }

    #[allow(clippy::too_many_arguments)]
    fn row(&mut self, check: String, criterion: u8, q: u64, formula: String, brute: String, pass: bool, t: Instant) {
        let elapsed_ms = t.elapsed().as_millis();
        self.rows.push(CheckRow { check, criterion, q, formula, brute_force: brute, pass, elapsed_ms });
    }

    fn cmp_int(&mut self, check: String, criterion: u8, q: u64, formula: &BigInt, brute: &BigInt, t: Instant) {
        self.rows.push(int_row(check, criterion, q, formula, brute, t));
    }

    fn cmp_enum(
        &mut self,
        check: String,
        criterion: u8,
        q: u64,
        formula: &WeightEnumerator,
        brute: &WeightEnumerator,
        t: Instant,
    ) {
        self.rows.push(enum_row(check, criterion, q, formula, brute, t));
    }

    fn geometry(&mut self, q: u64) -> Result<&CurveGeometry> {
        if let std::collections::btree_map::Entry::Vacant(slot) = self.geometries.entry(q) {
            slot.insert(CurveGeometry::for_q(q)?);
        }
        Ok(&self.geometries[&q])
    }

    fn census_admissible(&self, case: PairCase, q: u64) -> bool {
        match case {
            PairCase::ConicConic | PairCase::AffineConic => (3..=9).contains(&q),
            PairCase::ConicCubic => q == 3 || q == 4 || (q == 5 && self.opts.extended),
            PairCase::CubicCubic => q == 3 || (q == 4 && self.opts.extended),
        }
    }

    fn census(&mut self, case: PairCase, q: u64) -> Result<&CensusTable> {
        let key = (q, case.name());
        if !self.censuses.contains_key(&key) {
            let budget = self.opts.budget;
            let (d, e) = case.degrees();
            let table = pair_census(self.geometry(q)?, d, e, case_evaluation(case), &budget)?;
            self.censuses.insert(key, table);
        }
        Ok(&self.censuses[&key])
    }

    /// Direct Hamming enumerator of the conic (`"conic"`, `"affine"`) or
    /// cubic (`"cubic"`) code.
    fn hamming(&mut self, q: u64, which: &'static str) -> Result<WeightEnumerator> {
        let key = (q, which);
        if !self.hammings.contains_key(&key) {
            let budget = self.opts.budget;
            let (d, ev) = match which {
                "conic" => (2, Evaluation::Projective),
                "affine" => (2, Evaluation::Affine),
                _ => (3, Evaluation::Projective),
            };
            let g = self.geometry(q)?;
            let code = build_code(g.plane(), d, ev)?;
            let w = hamming_enumerator(g.field(), &code, &budget)?;
            self.hammings.insert(key, w);
        }
        Ok(self.hammings[&key].clone())
    }

    fn scan(&mut self, q: u64) -> Result<&CubicScan> {
        if !self.scans.contains_key(&q) {
            let budget = self.opts.budget;
            let s = cubic_scan(self.geometry(q)?.plane(), &budget)?;
            self.scans.insert(q, s);
        }
        Ok(&self.scans[&q])
    }

    fn check_census(&mut self, case: PairCase, q: u64) -> Result<()> {
        let t = Instant::now();
        let census = self.census(case, q)?.clone();
        let rows = census_rows(case, &census, t)?;
        self.rows.extend(rows);
        Ok(())
    }

    fn check_hamming(&mut self, q: u64) -> Result<()> {
        let t = Instant::now();
        let conic = self.hamming(q, "conic")?;
        self.cmp_enum("hamming_conic".into(), 5, q, &hamming_conic(q)?, &conic, t);
        let t = Instant::now();
        let affine = self.hamming(q, "affine")?;
        self.cmp_enum("hamming_affine_conic".into(), 5, q, &hamming_affine_conic(q)?, &affine, t);
        let t = Instant::now();
        let cubic = self.hamming(q, "cubic")?;
        self.cmp_enum("hamming_cubic".into(), 5, q, &hamming_cubic(q)?, &cubic, t);
        let t = Instant::now();
        let scanned = self.scan(q)?.hamming();
        self.cmp_enum("hamming_cubic_scan_route".into(), 5, q, &cubic, &scanned, t);
        for (id, w, dim) in [("conic", &conic, 6u32), ("cubic", &cubic, 10)] {
            let size = BigInt::from(q).pow(dim);
            self.cmp_int(format!("conservation_hamming_{id}"), 11, q, &size, &w.total(), t);
        }
        Ok(())
    }

    /// Both transforms: exactness, round trip, and low-weight dual
    /// coefficients against the dual formulas.
    fn check_macwilliams(&mut self, q: u64) -> Result<()> {
        let codes: [(&'static str, u32, usize, Family); 3] = [
            ("conic", 6, (q * q + q + 1) as usize, Family::DualConic),
            ("affine", 6, (q * q) as usize, Family::DualAffineConic),
            ("cubic", 10, (q * q + q + 1) as usize, Family::DualCubic),
        ];
        for (which, dim, n, family) in codes {
            let t = Instant::now();
            let w = self.hamming(q, which)?;
            let size = BigInt::from(q).pow(dim);
            let dual_size = BigInt::from(q).pow(n as u32 - dim);
            let dual = macwilliams(&w, q, &size);
            let (dual_str, back) = match &dual {
                Ok(d) => (enum_string(d), macwilliams(d, q, &dual_size).ok()),
                Err(e) => (e.to_string(), None),
            };
            let ok = dual.as_ref().is_ok_and(|d| d.is_nonnegative()) && back.as_ref() == Some(&w);
            self.row(format!("macwilliams_roundtrip_{which}"), 6, q, enum_string(&w), dual_str, ok, t);
            let Ok(dual) = dual else { continue };
            self.check_low_dual(&dual, family, q, which, t)?;
        }
        for case in PairCase::ALL {
            if !self.census_admissible(case, q) {
                self.skip(6, q, &format!("no {} census", case.name()));
                continue;
            }
            let t = Instant::now();
            let w2 = self.census(case, q)?.second_enumerator();
            let n = case.length(q);
            let size = case.size_product(q);
            let dual_size = BigInt::from(q).pow(2 * n as u32) / &size;
            let dual = macwilliams2(&w2, q, &size);
            let (dual_str, back) = match &dual {
                Ok(d) => (enum_string(d), macwilliams2(d, q, &dual_size).ok()),
                Err(e) => (e.to_string(), None),
            };
            let ok = dual.as_ref().is_ok_and(|d| d.is_nonnegative()) && back.as_ref() == Some(&w2);
            self.row(format!("macwilliams2_roundtrip_{}", case.name()), 6, q, enum_string(&w2), dual_str, ok, t);
            let Ok(dual) = dual else { continue };
            self.check_low_dual(&dual, case_families(case).1, q, case.name(), t)?;
        }
        Ok(())
    }

    /// Registered weight-slot formulas of `family` against `dual`, and the
    /// vanishing of every lower weight except 0.
    fn check_low_dual(&mut self, dual: &WeightEnumerator, family: Family, q: u64, tag: &str, t: Instant) -> Result<()> {
        let reg = Registry::global();
        let mut lowest = usize::MAX;
        for f in reg.family(family) {
            let Slot::Weight(p) = &f.slot else { continue };
            let weight = p.eval_int(q).to_integer();
            let weight = usize::try_from(weight).map_err(|_| Error::InvalidArgument(format!("slot of {}", f.id)))?;
            lowest = lowest.min(weight);
            let formula = reg.eval_count(&f.id, q)?;
            self.cmp_int(f.id.clone(), 6, q, &formula, dual.coeff(weight), t);
        }
        if lowest != usize::MAX {
            let below: BigInt = (1..lowest).map(|i| dual.coeff(i).clone()).sum();
            self.cmp_int(format!("dual_below_{lowest}_{tag}"), 6, q, &BigInt::zero(), &below, t);
            self.cmp_int(format!("dual_weight_0_{tag}"), 6, q, &BigInt::one(), dual.coeff(0), t);
        }
        Ok(())
    }

    /// Dual codes walked directly, against the classical transform and the
    /// dual formulas; second enumerators of dual pairs where small.
    fn check_direct_duals(&mut self, q: u64) -> Result<()> {
        let budget = self.opts.budget;
        let reg = Registry::global();
        let codes: [(&'static str, u32, Evaluation, Option<Family>); 3] = [
            ("conic", 2, Evaluation::Projective, Some(Family::DualConic)),
            ("affine", 2, Evaluation::Affine, Some(Family::DualAffineConic)),
            ("cubic", 3, Evaluation::Projective, Some(Family::DualCubic)),
        ];
        let mut duals = BTreeMap::new();
        for (which, d, ev, family) in codes {
            let t = Instant::now();
            let g = self.geometry(q)?;
            let code = build_code(g.plane(), d, ev)?;
            let dual = dual_code(g.field(), &code);
            let words = (q as u128).checked_pow(dual.dimension() as u32).unwrap_or(u128::MAX);
            if words > DIRECT_DUAL_LIMIT {
                self.skip(7, q, &format!("{which} dual exceeds {DIRECT_DUAL_LIMIT} codewords"));
                continue;
            }
            let direct = hamming_enumerator(g.field(), &dual, &budget)?;
            duals.insert(which, (code, dual));
            let w = self.hamming(q, which)?;
            let size = BigInt::from(q).pow(monomial_count(d) as u32);
            let transformed = macwilliams(&w, q, &size)?;
            self.cmp_enum(format!("dual_direct_{which}"), 7, q, &transformed, &direct, t);
            if let Some(family) = family {
                for f in reg.family(family) {
                    let Slot::Weight(p) = &f.slot else { continue };
                    let weight = p.eval_int(q).to_integer();
                    let weight = usize::try_from(weight).expect("weights are small");
                    let formula = reg.eval_count(&f.id, q)?;
                    self.cmp_int(format!("{}_direct", f.id), 7, q, &formula, direct.coeff(weight), t);
                }
            }
        }
        for case in PairCase::ALL {
            let (a, b) = match case {
                PairCase::ConicConic => ("conic", "conic"),
                PairCase::AffineConic => ("affine", "affine"),
                PairCase::ConicCubic => ("conic", "cubic"),
                PairCase::CubicCubic => ("cubic", "cubic"),
            };
            let (Some((_, da)), Some((_, db))) = (duals.get(a), duals.get(b)) else { continue };
            let words =
                |c: &crate::codes::LinearCode| (q as u128).checked_pow(c.dimension() as u32).unwrap_or(u128::MAX);
            let pairs = words(da).saturating_mul(words(db));
            if pairs > DIRECT_DUAL_LIMIT || !self.census_admissible(case, q) {
                continue;
            }
            let t = Instant::now();
            let field = self.geometry(q)?.field().clone();
            let direct = second_enumerator(&field, da, db, &budget)?;
            let w2 = self.census(case, q)?.second_enumerator();
            let transformed = macwilliams2(&w2, q, &case.size_product(q))?;
            self.cmp_enum(format!("dual2_direct_{}", case.name()), 7, q, &transformed, &direct, t);
        }
        Ok(())
    }

    fn check_configurations(&mut self, q: u64) -> Result<()> {
        let budget = if self.opts.extended { Budget::EXTENDED } else { self.opts.budget };
        let t = Instant::now();
        let g = self.geometry(q)?;
        let scanner = ConfigScanner::new(g);
        let rows = scanner.family_counts(&budget)?;
        let nine = scanner.count_i9(&budget)?;
        for r in &rows {
            let formula = r.formula.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string());
            self.row(r.id.clone(), 8, q, formula, r.brute_force.to_string(), r.matches, t);
        }
        let get = |id: &str| rows.iter().find(|r| r.id == id).map_or(0, |r| r.brute_force);
        self.cmp_int("J8_is_9_I9".into(), 8, q, &big(9 * get("I9")), &big(get("J8")), t);
        self.cmp_int(
            "nine_sets_without_free_pencil".into(),
            8,
            q,
            &BigInt::zero(),
            &big(nine.independent_eights_without_pencil),
            t,
        );
        self.cmp_int(
            "pencil_bases_with_dependent_eight".into(),
            8,
            q,
            &BigInt::zero(),
            &big(nine.pencil_with_dependent_eight),
            t,
        );
        Ok(())
    }

    fn check_collinear(&mut self, q: u64) -> Result<()> {
        for d in 2..=3u32 {
            for m in d + 2..=q as u32 + 1 {
                let t = Instant::now();
                let c = collinear_dual_counts(self.geometry(q)?.plane(), d, m)?;
                self.cmp_int(format!("dim_V_{d}_{m}"), 9, q, &big(c.dimension_formula), &big(c.dimension), t);
                self.cmp_int(format!("f_{d}_{m}"), 9, q, &c.full_support_formula, &big(c.full_support), t);
                self.cmp_int(format!("g_{d}_{m}"), 9, q, &c.covering_pairs_formula, &big(c.covering_pairs), t);
            }
        }
        Ok(())
    }

    fn check_smooth_traces(&mut self, q: u64) -> Result<()> {
        let t = Instant::now();
        let total: BigRational = trace_table(q)?.into_iter().map(|(_, p)| p).sum();
        self.row("trace_probabilities_sum".into(), 10, q, "1".into(), total.to_string(), total.is_one(), t);
        let predicted = predict_smooth_enumerator(q)?;
        let smooth = self.scan(q)?.smooth_enumerator();
        for tr in hasse_range(q) {
            let z = (q as i64 + 1 - tr) as usize;
            self.cmp_int(format!("smooth_trace_{tr}"), 10, q, predicted.coeff_x(z), smooth.coeff_x(z), t);
        }
        self.cmp_enum("smooth_enumerator".into(), 10, q, &predicted, &smooth, t);
        Ok(())
    }

    /// Registry main terms, the subspace decomposition of the second
    /// enumerator, and thread-count invariance.
    fn check_structure(&mut self) -> Result<()> {
        let reg = Registry::global();
        let t = Instant::now();
        for case in PairCase::ALL {
            let (d, e) = case.degrees();
            let de = (d * e) as usize;
            let top = monomial_count(d) + monomial_count(e);
            for k in 0..=de {
                let id = format!("c{k}_{}", case.name());
                let poly = &reg.lookup(&id)?.poly;
                let share = fixed_point_proportion(k, de);
                let expect_degree = if share.is_zero() { top - 1 } else { top };
                let degree = poly.degree().unwrap_or(0);
                let lead_ok = share.is_zero() || poly.leading_coefficient() == share;
                let formula = format!("degree {expect_degree}, leading {share}");
                let brute = format!("degree {degree}, leading {}", poly.leading_coefficient());
                self.row(format!("main_term_{id}"), 11, 0, formula, brute, degree == expect_degree && lead_ok, t);
            }
        }
        let q = 3;
        for (which, d) in [("conic", 2u32), ("cubic", 3)] {
            let t = Instant::now();
            let budget = self.opts.budget;
            let g = self.geometry(q)?;
            let code = build_code(g.plane(), d, Evaluation::Projective)?;
            let (w1, w2) = support_r_enumerators(g.field(), &code, &budget)?;
            let n = code.len();
            let qb = BigInt::from(q);
            let one = &qb * &qb - 1;
            let two = &one * (&qb * &qb - &qb);
            let rebuilt = &(&WeightEnumerator::x_power(n) + &w1.scale(&one)) + &w2.scale(&two);
            let case = if d == 2 { PairCase::ConicConic } else { PairCase::CubicCubic };
            let second = self.census(case, q)?.second_enumerator();
            self.cmp_enum(format!("subspace_decomposition_{which}"), 11, q, &rebuilt, &second, t);
            let hamming = &WeightEnumerator::x_power(n) + &w1.scale(&(&qb - 1));
            let direct = self.hamming(q, which)?;
            self.cmp_enum(format!("one_dimensional_{which}"), 11, q, &hamming, &direct, t);
        }
        let t = Instant::now();
        let budget = self.opts.budget;
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let g = self.geometry(q)?;
        let serial = single.install(|| -> Result<_> {
            let census = pair_census(g, 2, 3, Evaluation::Projective, &budget)?;
            let nine = ConfigScanner::new(g).count_i9(&budget)?;
            Ok((census, nine))
        })?;
        let parallel =
            (pair_census(g, 2, 3, Evaluation::Projective, &budget)?, ConfigScanner::new(g).count_i9(&budget)?);
        let same = serial == parallel;
        let threads = rayon::current_num_threads();
        self.row("thread_count_invariance".into(), 11, q, "1 thread".into(), format!("{threads} threads"), same, t);
        Ok(())
    }

    /// Low-weight dual codewords counted by scanning supports and their
    /// failing configurations.
    fn check_support_scans(&mut self, q: u64) -> Result<()> {
        let budget = self.opts.budget;
        let reg = Registry::global();
        let scanner = ConfigScanner::new(self.geometry(q)?);
        let mut found = Vec::new();
        for (d, weights, family) in [(2u32, 4..=6usize, "dual_conic"), (3, 5..=9, "dual_cubic")] {
            for k in weights {
                let t = Instant::now();
                let census = scanner.dual_support_census(d, k, &budget)?;
                let id = format!("B{k}_{family}");
                found.push((id.clone(), reg.eval_count(&id, q)?, census.words, t));
            }
        }
        for (id, formula, words, t) in found {
            self.cmp_int(format!("{id}_support_scan"), 12, q, &formula, &big(words), t);
        }
        Ok(())
    }
}
