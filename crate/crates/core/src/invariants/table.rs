use std::collections::BTreeSet;
use std::fmt;
use std::io::{Read, Write};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Invariants, LaurentPolynomial};
use crate::diagrams::PlanarDiagramCode;
use crate::error::{Error, Result};
use crate::gauss::DtCode;

/// Composite matches are searched with at most this many prime factors.
pub const MAX_FACTORS: usize = 2;

const BUNDLED: &str = include_str!("../../../../data/reference_table.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub dt: DtCode,
    pub jones: LaurentPolynomial,
    pub alexander: LaurentPolynomial,
    pub determinant: u64,
    pub amphicheiral: bool,
}

impl KnotRecord {
    /// Record with polynomials computed from the DT code.
    pub fn from_dt(name: &str, dt: DtCode, amphicheiral: bool) -> Result<Self> {
        let pd = PlanarDiagramCode::from_dt(&dt)?;
        let inv = Invariants::of(&pd)?;
        Ok(KnotRecord {
            name: name.to_string(),
            dt,
            jones: inv.jones,
            alexander: inv.alexander,
            determinant: inv.determinant,
            amphicheiral,
        })
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct KnotTable {
    pub records: Vec<KnotRecord>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    name: String,
    dt: String,
    jones_min_degree: i64,
    jones_coeffs: String,
    alex_coeffs: String,
    determinant: u64,
    amphicheiral: u8,
}

#[derive(Deserialize)]
struct SourceRow {
    name: String,
    dt: String,
    amphicheiral: u8,
}

fn coeff_list(p: &LaurentPolynomial) -> String {
    p.coeffs().iter().map(|c| c.to_string()).join(" ")
}

fn parse_coeffs(s: &str, min: i64) -> Result<LaurentPolynomial> {
    let cs = s
        .split_whitespace()
        .map(|c| c.parse::<i64>().map_err(|_| Error::Table(format!("bad coefficient {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPolynomial::new(min, cs))
}

impl KnotTable {
    /// The table shipped with the crate.
    pub fn bundled() -> Self {
        KnotTable::read_csv(BUNDLED.as_bytes()).expect("bundled table parses")
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut records = Vec::new();
        for row in csv::Reader::from_reader(r).deserialize() {
            let row: Row = row?;
            let alex_len = row.alex_coeffs.split_whitespace().count() as i64;
            records.push(KnotRecord {
                dt: DtCode::parse(&row.dt)?,
                jones: parse_coeffs(&row.jones_coeffs, row.jones_min_degree)?,
                alexander: parse_coeffs(&row.alex_coeffs, -(alex_len - 1) / 2)?,
                determinant: row.determinant,
                amphicheiral: row.amphicheiral != 0,
                name: row.name,
            });
        }
        Ok(KnotTable { records })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.records {
            out.serialize(Row {
                name: r.name.clone(),
                dt: r.dt.evens.iter().join(" "),
                jones_min_degree: r.jones.min_degree(),
                jones_coeffs: coeff_list(&r.jones),
                alex_coeffs: coeff_list(&r.alexander),
                determinant: r.determinant,
                amphicheiral: u8::from(r.amphicheiral),
            })?;
        }
        out.flush()?;
        Ok(())
    }

    /// Builds records from `name,dt,amphicheiral,...` rows, computing every
    /// polynomial with this crate.
    pub fn from_source<R: Read>(r: R) -> Result<Self> {
        let rows: Vec<SourceRow> = csv::Reader::from_reader(r).deserialize().collect::<std::result::Result<_, _>>()?;
        let records = rows
            .par_iter()
            .map(|row| KnotRecord::from_dt(&row.name, DtCode::parse(&row.dt)?, row.amphicheiral != 0))
            .collect::<Result<Vec<_>>>()?;
        Ok(KnotTable { records })
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentificationResult {
    Trivial,
    /// `mirrored` is set when only the mirror image of the record matches.
    MatchedPrime { name: String, mirrored: bool },
    /// Factor names; a `*` marks the mirror image of a chiral factor.
    MatchedComposite(Vec<String>),
    Unidentified { candidates: Vec<String> },
}

impl IdentificationResult {
    pub fn prime_name(&self) -> Option<&str> {
        match self {
            IdentificationResult::MatchedPrime { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn is_unidentified(&self) -> bool {
        matches!(self, IdentificationResult::Unidentified { .. })
    }
}

impl fmt::Display for IdentificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentificationResult::Trivial => f.write_str("trivial"),
            IdentificationResult::MatchedPrime { name, mirrored: false } => f.write_str(name),
            IdentificationResult::MatchedPrime { name, mirrored: true } => write!(f, "{name}*"),
            IdentificationResult::MatchedComposite(names) => f.write_str(&names.join(" # ")),
            IdentificationResult::Unidentified { candidates } if candidates.is_empty() => f.write_str("unidentified"),
            IdentificationResult::Unidentified { candidates } => {
                write!(f, "ambiguous ({})", candidates.join(", "))
            }
        }
    }
}

struct Factor<'a> {
    label: String,
    jones: LaurentPolynomial,
    alexander: &'a LaurentPolynomial,
}

/// Matches invariants against the table: trivial Jones, then a unique prime
/// record (up to mirror), then products of up to [`MAX_FACTORS`] records.
pub fn identify(inv: &Invariants, table: &KnotTable) -> IdentificationResult {
    if inv.jones == LaurentPolynomial::one() {
        return IdentificationResult::Trivial;
    }
    let mut primes: Vec<(String, bool)> = Vec::new();
    for r in &table.records {
        if r.alexander != inv.alexander {
            continue;
        }
        if r.jones == inv.jones {
            primes.push((r.name.clone(), false));
        } else if r.jones.invert() == inv.jones {
            primes.push((r.name.clone(), true));
        }
    }
    match primes.len() {
        1 => {
            let (name, mirrored) = primes.pop().unwrap();
            return IdentificationResult::MatchedPrime { name, mirrored };
        }
        0 => {}
        _ => {
            return IdentificationResult::Unidentified {
                candidates: primes.into_iter().map(|(n, _)| n).collect(),
            }
        }
    }
    let factors: Vec<Factor> = table
        .records
        .iter()
        .filter(|r| r.determinant > 1 || r.jones != LaurentPolynomial::one())
        .flat_map(|r| {
            let plain = Factor { label: r.name.clone(), jones: r.jones.clone(), alexander: &r.alexander };
            let mirror = (!r.amphicheiral && !r.jones.is_symmetric())
                .then(|| Factor { label: format!("{}*", r.name), jones: r.jones.invert(), alexander: &r.alexander });
            std::iter::once(plain).chain(mirror)
        })
        .collect();
    let mut found: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut stack = Vec::new();
    factorize(&inv.jones, &inv.alexander, &factors, 0, &mut stack, &mut found);
    match found.len() {
        1 => IdentificationResult::MatchedComposite(found.pop_first().unwrap()),
        0 => IdentificationResult::Unidentified { candidates: vec![] },
        _ => IdentificationResult::Unidentified {
            candidates: found.into_iter().map(|f| f.join(" # ")).collect(),
        },
    }
}

fn factorize(
    jones: &LaurentPolynomial,
    alexander: &LaurentPolynomial,
    factors: &[Factor],
    from: usize,
    stack: &mut Vec<String>,
    found: &mut BTreeSet<Vec<String>>,
) {
    if stack.len() >= 2 && *jones == LaurentPolynomial::one() && *alexander == LaurentPolynomial::one() {
        found.insert(stack.clone());
        return;
    }
    if stack.len() == MAX_FACTORS {
        return;
    }
    let span = jones.max_degree() - jones.min_degree();
    for (i, f) in factors.iter().enumerate().skip(from) {
        if f.jones.max_degree() - f.jones.min_degree() > span {
            continue;
        }
        let Some(j) = jones.div_exact(&f.jones) else { continue };
        let Some(a) = alexander.div_exact(f.alexander) else { continue };
        stack.push(f.label.clone());
        factorize(&j, &super::normalize_alexander(a), factors, i, stack, found);
        stack.pop();
    }
}
