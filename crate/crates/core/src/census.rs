//! End-to-end census: valid templates, crossing variations, twist vectors,
//! synthesized diagrams, invariants and identification, keeping a minimal
//! witness diagram for every knot found.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::curves::filtered_curves;
use crate::diagrams::{crossing_variations, is_r2_reducible, synthesize, twist_assignments};
use crate::error::{Error, Result};
use crate::invariants::{identify, IdentificationResult, Invariants, KnotTable};
use crate::templates::{raw_templates, valid_templates};
use crate::{KnotDiagramTemplate, ParterreTemplate, PlanarDiagramCode, TwistVector};

/// Largest budget accepted without an explicit override.
pub const BUDGET_GUARD: usize = 20;

/// Bumped whenever a cached stage changes meaning.
const CACHE_VERSION: &str = "1";

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub max_crossings: usize,
    /// Restricts the template sizes; all admissible sizes when empty.
    pub ns: Vec<usize>,
    pub override_guard: bool,
    pub cache_dir: Option<PathBuf>,
}

impl CensusOptions {
    pub fn new(max_crossings: usize) -> Self {
        CensusOptions { max_crossings, ..Default::default() }
    }
}

/// Where a witness diagram came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub n: usize,
    pub word: String,
    pub signs: String,
    pub template: String,
    pub variation: String,
    pub twists: String,
}

impl Provenance {
    fn of(kdt: &KnotDiagramTemplate, tv: &TwistVector) -> Self {
        let code = kdt.parterre.curve.code().to_string();
        let (word, signs) = code.split_once(':').unwrap_or((&code, ""));
        Provenance {
            n: kdt.parterre.n(),
            word: word.to_string(),
            signs: signs.to_string(),
            template: kdt.parterre.to_string(),
            variation: kdt.variation_string(),
            twists: tv.display_for(&kdt.parterre),
        }
    }
}

/// One knot (or one unidentified invariant class) with its smallest witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub name: String,
    /// Crossings of the smallest doubly symmetric witness found.
    pub c_ds: usize,
    pub witness: PlanarDiagramCode,
    pub provenance: Provenance,
    pub invariants: Invariants,
    /// Number of enumerated diagrams in this class.
    pub diagrams: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub n: usize,
    pub curves: usize,
    pub raw_templates: usize,
    pub valid_templates: usize,
    pub variations: usize,
    pub r2_reducible: usize,
    pub diagrams: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub max_crossings: usize,
    pub stages: Vec<StageCounts>,
    pub primes: Vec<CensusRow>,
    pub composites: Vec<CensusRow>,
    pub trivial: usize,
    /// Unidentified or ambiguous classes, grouped by invariants.
    pub unidentified: Vec<CensusRow>,
}

impl CensusReport {
    pub fn prime_names(&self) -> Vec<&str> {
        self.primes.iter().map(|r| r.name.as_str()).collect()
    }

    /// Prime rows whose observed c_ds equals `c`.
    pub fn primes_at(&self, c: usize) -> Vec<&CensusRow> {
        self.primes.iter().filter(|r| r.c_ds == c).collect()
    }

    pub fn diagram_count(&self) -> usize {
        self.stages.iter().map(|s| s.diagrams).sum()
    }
}

/// Content-addressed stage outputs stored as JSON lines.
#[derive(Clone, Debug)]
pub struct RunCache {
    dir: PathBuf,
}

impl RunCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(RunCache { dir: dir.as_ref().to_path_buf() })
    }

    fn path(&self, stage: &str, key: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{CACHE_VERSION}/{stage}/{key}"));
        self.dir.join(format!("{stage}-{}.jsonl", &hex::encode(digest)[..20]))
    }

    /// Returns the cached items for `(stage, key)` or computes and stores them.
    pub fn stage<T, F>(&self, stage: &str, key: &str, compute: F) -> Result<Vec<T>>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<Vec<T>>,
    {
        let path = self.path(stage, key);
        if let Ok(f) = fs::File::open(&path) {
            let mut items = Vec::new();
            for line in BufReader::new(f).lines() {
                items.push(serde_json::from_str(&line?)?);
            }
            return Ok(items);
        }
        let items = compute()?;
        // Write beside the target and rename, so readers never see a partial file.
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut w = std::io::BufWriter::new(fs::File::create(&tmp)?);
            for it in &items {
                serde_json::to_writer(&mut w, it)?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(items)
    }
}

fn cached<T, F>(cache: Option<&RunCache>, stage: &str, key: &str, compute: F) -> Result<Vec<T>>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<Vec<T>>,
{
    match cache {
        Some(c) => c.stage(stage, key, compute),
        None => compute(),
    }
}

#[derive(Serialize, Deserialize)]
struct TemplateStage {
    curves: usize,
    raw: usize,
    valid: Vec<ParterreTemplate>,
}

/// A synthesized diagram with the template variation and twists it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesizedDiagram {
    pub kdt: KnotDiagramTemplate,
    pub twists: TwistVector,
    pub pd: PlanarDiagramCode,
}

impl SynthesizedDiagram {
    pub fn provenance(&self) -> Provenance {
        Provenance::of(&self.kdt, &self.twists)
    }
}

/// Template sizes admitted by a budget: a prime diagram needs `4n + 4` crossings.
pub fn admissible_ns(max_crossings: usize) -> Vec<usize> {
    (0..).take_while(|n| 4 * n + 4 <= max_crossings).collect()
}

/// Synthesized diagrams for one template size, with their stage counts.
fn diagrams_for(n: usize, max_crossings: usize, cache: Option<&RunCache>) -> Result<(StageCounts, Vec<SynthesizedDiagram>)> {
    let stage = cached(cache, "templates", &format!("n={n}"), || {
        Ok(vec![TemplateStage { curves: filtered_curves(n).len(), raw: raw_templates(n).len(), valid: valid_templates(n) }])
    })?
    .pop()
    .ok_or_else(|| Error::Table("empty template stage in cache".into()))?;
    let variations: Vec<KnotDiagramTemplate> = stage.valid.iter().flat_map(crossing_variations).collect();
    let kept: Vec<&KnotDiagramTemplate> = variations.iter().filter(|v| !is_r2_reducible(v)).collect();
    let key = format!("n={n}/budget={max_crossings}");
    let jobs = cached(cache, "diagrams", &key, || {
        kept.par_iter()
            .map(|v| {
                twist_assignments(v, max_crossings)
                    .into_iter()
                    .map(|tv| Ok(SynthesizedDiagram { pd: synthesize(v, &tv)?, kdt: (*v).clone(), twists: tv }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect())
    })?;
    let counts = StageCounts {
        n,
        curves: stage.curves,
        raw_templates: stage.raw,
        valid_templates: stage.valid.len(),
        variations: variations.len(),
        r2_reducible: variations.len() - kept.len(),
        diagrams: jobs.len(),
    };
    Ok((counts, jobs))
}

/// Every diagram of the selected template sizes within the budget, in a
/// fixed order: size, template, variation, twist vector.
pub fn enumerate_diagrams(opts: &CensusOptions) -> Result<(Vec<StageCounts>, Vec<SynthesizedDiagram>)> {
    if opts.max_crossings > BUDGET_GUARD && !opts.override_guard {
        return Err(Error::BudgetGuard { requested: opts.max_crossings, guard: BUDGET_GUARD });
    }
    let cache = opts.cache_dir.as_ref().map(RunCache::open).transpose()?;
    let mut stages = Vec::new();
    let mut jobs = Vec::new();
    for n in admissible_ns(opts.max_crossings) {
        if !opts.ns.is_empty() && !opts.ns.contains(&n) {
            continue;
        }
        let (counts, js) = diagrams_for(n, opts.max_crossings, cache.as_ref())?;
        stages.push(counts);
        jobs.extend(js);
    }
    Ok((stages, jobs))
}

/// Runs the full pipeline and buckets the diagrams by identification.
pub fn run_census(opts: &CensusOptions, table: &KnotTable) -> Result<CensusReport> {
    let (stages, jobs) = enumerate_diagrams(opts)?;
    let cache = opts.cache_dir.as_ref().map(RunCache::open).transpose()?;
    let pds: Vec<String> = jobs.iter().map(|j| j.pd.to_string()).collect();
    let invariants: Vec<Invariants> = cached(cache.as_ref(), "invariants", &pds.join("\n"), || {
        jobs.par_iter().map(|j| Invariants::of(&j.pd)).collect()
    })?;

    let mut trivial = 0;
    let mut primes: BTreeMap<String, CensusRow> = BTreeMap::new();
    let mut composites: BTreeMap<String, CensusRow> = BTreeMap::new();
    let mut unknown: BTreeMap<Invariants, CensusRow> = BTreeMap::new();
    let ids: Vec<IdentificationResult> = invariants.par_iter().map(|inv| identify(inv, table)).collect();
    for ((job, inv), id) in jobs.iter().zip(invariants).zip(ids) {
        let row = || CensusRow {
            name: id.to_string(),
            c_ds: job.pd.len(),
            witness: job.pd.clone(),
            provenance: job.provenance(),
            invariants: inv.clone(),
            diagrams: 0,
        };
        let slot = match &id {
            IdentificationResult::Trivial => {
                trivial += 1;
                continue;
            }
            IdentificationResult::MatchedPrime { name, .. } => primes.entry(name.clone()),
            IdentificationResult::MatchedComposite(_) => composites.entry(id.to_string()),
            IdentificationResult::Unidentified { .. } => {
                let e = unknown.entry(inv.clone()).or_insert_with(&row);
                keep_smaller(e, &row);
                continue;
            }
        };
        let e = slot.or_insert_with(&row);
        keep_smaller(e, &row);
    }
    let sorted = |rows: Vec<CensusRow>| {
        let mut rows = rows;
        rows.sort_by(|a, b| (a.c_ds, &a.name).cmp(&(b.c_ds, &b.name)));
        rows
    };
    Ok(CensusReport {
        max_crossings: opts.max_crossings,
        stages,
        primes: sorted(primes.into_values().collect()),
        composites: sorted(composites.into_values().collect()),
        trivial,
        unidentified: sorted(unknown.into_values().collect()),
    })
}

/// Counts another diagram of the class; a strictly smaller one becomes the
/// witness, so ties keep the earliest in enumeration order.
fn keep_smaller(e: &mut CensusRow, candidate: &dyn Fn() -> CensusRow) {
    e.diagrams += 1;
    if e.diagrams > 1 {
        let c = candidate();
        if c.c_ds < e.c_ds {
            *e = CensusRow { diagrams: e.diagrams, ..c };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard() {
        let err = run_census(&CensusOptions::new(BUDGET_GUARD + 2), &KnotTable::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetGuard { requested: 22, guard: 20 }));
    }

    #[test]
    fn admissible_sizes() {
        assert_eq!(admissible_ns(11), vec![0, 1]);
        assert_eq!(admissible_ns(12), vec![0, 1, 2]);
        assert_eq!(admissible_ns(18), vec![0, 1, 2, 3]);
    }

    #[test]
    fn budget_twelve_has_no_primes() {
        let report = run_census(&CensusOptions::new(12), &KnotTable::bundled()).unwrap();
        assert!(report.primes.is_empty());
        assert!(report.unidentified.is_empty());
        assert!(report.diagram_count() > 0);
    }
}
