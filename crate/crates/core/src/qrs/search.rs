use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::slice::{certify, min_valuation, qrs_decode, QrsCertificate, QrsContext, SignVector};
use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::galgebra::{check_gshds, GshdsKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Every sign vector in Gray-code order.
    Exhaustive,
    /// Seeded random sign vectors.
    Sample,
    /// Depth-first over orbits grouped by element order, cutting branches
    /// whose partial coefficients already fail a congruence.
    Pruned,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Candidate limit; `None` means the whole space (exhaustive, pruned) or
    /// `DEFAULT_SAMPLES` (sample).
    pub budget: Option<u64>,
    pub seed: u64,
    pub jobs: usize,
    /// Run the convolution check on every candidate, not only on hits.
    pub verify_all: bool,
    /// Gray-code index to start from (exhaustive only).
    pub start: u64,
}

pub const DEFAULT_SAMPLES: u64 = 100_000;
const CHUNK: u64 = 1 << 12;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { mode: SearchMode::Exhaustive, budget: None, seed: 0, jobs: 0, verify_all: false, start: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub n0: u64,
    pub r: usize,
    pub mode: SearchMode,
    pub candidates_examined: u64,
    /// The whole space was covered.
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resume_from: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `|G|` is an even power of `p`: no skew candidates, only statistics.
    pub square_order: bool,
    /// Candidates checked by convolution as well as divisibility.
    pub convolution_checked: u64,
    /// Candidates where the two verdicts differ (expected 0).
    pub disagreements: u64,
    /// `nu_p` of the difference coefficients over examined candidates.
    pub nu_histogram: BTreeMap<u32, u64>,
    pub hits: Vec<SignVector>,
}

impl SearchReport {
    pub fn certificates(&self, ctx: &QrsContext) -> Result<Vec<QrsCertificate>> {
        self.hits.iter().map(|d| certify(ctx, d)).collect()
    }
}

#[derive(Default)]
struct Tally {
    examined: u64,
    checked: u64,
    disagreements: u64,
    hist: BTreeMap<u32, u64>,
    hits: Vec<SignVector>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.examined += other.examined;
        self.checked += other.checked;
        self.disagreements += other.disagreements;
        for (k, v) in other.hist {
            *self.hist.entry(k).or_default() += v;
        }
        self.hits.extend(other.hits);
        self
    }
}

struct Scorer<'a> {
    ctx: &'a QrsContext,
    /// `p^alpha`, or `None` for square order.
    pa: Option<i64>,
    verify_all: bool,
}

impl Scorer<'_> {
    fn visit(&self, t: &mut Tally, y: &[i64], d: &[i8]) -> Result<()> {
        t.examined += 1;
        *t.hist.entry(min_valuation(y, self.ctx.group.p())).or_default() += 1;
        let Some(pa) = self.pa else { return Ok(()) };
        let by_div = y.iter().all(|x| x % pa == 0);
        if by_div || self.verify_all {
            let sv = SignVector { d: d.to_vec() };
            let cert = check_gshds(&qrs_decode(self.ctx, &sv)?, self.ctx.n0())?;
            t.checked += 1;
            let by_conv = cert.kind != GshdsKind::NotGshds;
            if by_conv != by_div {
                t.disagreements += 1;
            }
            if by_div && by_conv {
                t.hits.push(sv);
            }
        }
        Ok(())
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::Malformed(format!("thread pool: {e}")))
}

/// Search the sign vectors of `ctx` for GSHDS.
pub fn search(ctx: &QrsContext, cfg: &SearchConfig) -> Result<SearchReport> {
    let scorer = Scorer { ctx, pa: ctx.alpha().map(|a| pow_u64(ctx.group.p(), a) as i64), verify_all: cfg.verify_all };
    let r = ctx.r();
    let (tally, complete, resume) = match cfg.mode {
        SearchMode::Exhaustive => {
            if r >= 63 {
                return Err(Error::TooLarge(format!("2^{r} sign vectors")));
            }
            let total = 1u64 << r;
            let start = cfg.start.min(total);
            let end = cfg.budget.map_or(total, |b| start.saturating_add(b).min(total));
            let chunks: Vec<(u64, u64)> = (start..end).step_by(CHUNK as usize).map(|a| (a, (a + CHUNK).min(end))).collect();
            let t = pool(cfg.jobs)?.install(|| chunks.par_iter().map(|&(a, b)| gray_range(&scorer, a, b)).collect::<Result<Vec<_>>>())?;
            let t = t.into_iter().fold(Tally::default(), Tally::merge);
            (t, start == 0 && end == total, (end < total).then_some(end))
        }
        SearchMode::Sample => {
            let n = cfg.budget.unwrap_or(DEFAULT_SAMPLES);
            let chunks: Vec<(u64, u64)> = (0..n).step_by(CHUNK as usize).map(|a| (a, (a + CHUNK).min(n))).collect();
            let t =
                pool(cfg.jobs)?.install(|| chunks.par_iter().map(|&(a, b)| sample_range(&scorer, cfg.seed, a / CHUNK, b - a)).collect::<Result<Vec<_>>>())?;
            (t.into_iter().fold(Tally::default(), Tally::merge), false, None)
        }
        SearchMode::Pruned => {
            let (t, complete) = pruned(&scorer, cfg.budget)?;
            (t, complete, None)
        }
    };
    let mut hits = tally.hits;
    hits.sort();
    hits.dedup();
    Ok(SearchReport {
        group: ctx.group.dsl(),
        n0: ctx.n0(),
        r,
        mode: cfg.mode,
        candidates_examined: tally.examined,
        complete,
        resume_from: resume,
        seed: (cfg.mode == SearchMode::Sample).then_some(cfg.seed),
        square_order: scorer.pa.is_none(),
        convolution_checked: tally.checked,
        disagreements: tally.disagreements,
        nu_histogram: tally.hist,
        hits,
    })
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

fn column(ctx: &QrsContext, j: usize) -> Vec<i64> {
    (0..ctx.r()).map(|i| ctx.a.matrix.get(i, j)).collect()
}

/// Gray-code indices `a..b`: bit `j` of `gray(i)` set means `d_j = -1`.
fn gray_range(sc: &Scorer, a: u64, b: u64) -> Result<Tally> {
    let ctx = sc.ctx;
    let cols: Vec<Vec<i64>> = (0..ctx.r()).map(|j| column(ctx, j)).collect();
    let mut d = SignVector::from_bits(gray(a), ctx.r()).d;
    let mut y = ctx.a.matrix.mat_vec(&d.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
    let mut t = Tally::default();
    sc.visit(&mut t, &y, &d)?;
    for i in a + 1..b {
        let j = i.trailing_zeros() as usize;
        let delta = -2 * d[j] as i64;
        for (yk, ck) in y.iter_mut().zip(&cols[j]) {
            *yk += delta * ck;
        }
        d[j] = -d[j];
        sc.visit(&mut t, &y, &d)?;
    }
    Ok(t)
}

/// `n` samples from the stream `ChaCha8(seed)` at stream index `chunk`.
fn sample_range(sc: &Scorer, seed: u64, chunk: u64, n: u64) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let r = sc.ctx.r();
    let mut t = Tally::default();
    for _ in 0..n {
        let d: Vec<i8> = (0..r).map(|_| if rng.gen::<bool>() { -1 } else { 1 }).collect();
        let y = sc.ctx.a.matrix.mat_vec(&d.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
        sc.visit(&mut t, &y, &d)?;
    }
    Ok(t)
}

/// Orbits whose representatives have order `p^e` contribute multiples of
/// `p^{e-1}` to every coefficient, so once all orbits of order at most `p^t`
/// are fixed the partial sums are the coefficients mod `p^t`.
fn pruned(sc: &Scorer, budget: Option<u64>) -> Result<(Tally, bool)> {
    let ctx = sc.ctx;
    let g = &ctx.group;
    let pa = sc.pa.ok_or(Error::SquareOrder(g.beta()))?;
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); g.s() as usize];
    for (j, &x) in ctx.table.reps().iter().enumerate() {
        levels[g.order_exp_idx(x) as usize - 1].push(j);
    }
    let mods: Vec<i64> = (1..=g.s()).map(|t| pow_u64(g.p(), t).min(pa as u64) as i64).collect();
    let mut st = Dfs {
        sc,
        cols: (0..ctx.r()).map(|j| column(ctx, j)).collect(),
        levels,
        mods,
        pa,
        d: vec![1; ctx.r()],
        y: vec![0; ctx.r()],
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
        tally: Tally::default(),
    };
    let complete = st.level(0)?;
    Ok((st.tally, complete))
}

struct Dfs<'a> {
    sc: &'a Scorer<'a>,
    cols: Vec<Vec<i64>>,
    levels: Vec<Vec<usize>>,
    mods: Vec<i64>,
    pa: i64,
    d: Vec<i8>,
    y: Vec<i64>,
    nodes: u64,
    budget: u64,
    tally: Tally,
}

impl Dfs<'_> {
    fn add(&mut self, j: usize, sign: i64) {
        for (yk, ck) in self.y.iter_mut().zip(&self.cols[j]) {
            *yk += sign * ck;
        }
    }

    /// Enumerate the orbits of level `t`; returns `false` when the budget ran out.
    fn level(&mut self, t: usize) -> Result<bool> {
        if t == self.levels.len() {
            if self.y.iter().all(|x| x % self.pa == 0) {
                let (y, d) = (self.y.clone(), self.d.clone());
                self.sc.visit(&mut self.tally, &y, &d)?;
            } else {
                self.tally.examined += 1;
            }
            return Ok(true);
        }
        let orbits = self.levels[t].clone();
        if orbits.len() >= 63 {
            return Err(Error::TooLarge(format!("2^{} assignments at one level", orbits.len())));
        }
        for &j in &orbits {
            self.d[j] = 1;
            self.add(j, 1);
        }
        let m = self.mods[t];
        let n = 1u64 << orbits.len();
        let mut ok = true;
        for i in 0..n {
            if i > 0 {
                let j = orbits[i.trailing_zeros() as usize];
                let delta = -2 * self.d[j] as i64;
                self.add(j, delta);
                self.d[j] = -self.d[j];
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                ok = false;
                break;
            }
            if self.y.iter().all(|x| x % m == 0) && !self.level(t + 1)? {
                ok = false;
                break;
            }
        }
        for &j in &orbits {
            self.add(j, -(self.d[j] as i64));
            self.d[j] = 1;
        }
        Ok(ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::make_group;

    fn ctx(e: &[u32]) -> QrsContext {
        QrsContext::new(&make_group(3, e).unwrap()).unwrap()
    }

    #[test]
    fn z3_has_two_hits() {
        let rep = search(&ctx(&[1]), &SearchConfig { verify_all: true, ..Default::default() }).unwrap();
        assert_eq!(rep.candidates_examined, 2);
        assert_eq!(rep.hits.len(), 2);
        assert_eq!(rep.disagreements, 0);
        assert!(rep.complete);
    }

    #[test]
    fn jobs_do_not_change_result() {
        let c = ctx(&[2, 1]);
        let a = search(&c, &SearchConfig { jobs: 1, verify_all: true, ..Default::default() }).unwrap();
        let b = search(&c, &SearchConfig { jobs: 4, verify_all: true, ..Default::default() }).unwrap();
        assert_eq!(a.hits, b.hits);
        assert_eq!(a.nu_histogram, b.nu_histogram);
        assert_eq!(a.disagreements, 0);
        let p = search(&c, &SearchConfig { mode: SearchMode::Pruned, ..Default::default() }).unwrap();
        assert_eq!(p.hits, a.hits);
        assert!(p.complete);
    }

    #[test]
    fn budget_and_resume() {
        let c = ctx(&[1, 1, 1]);
        let full = search(&c, &SearchConfig::default()).unwrap();
        let first = search(&c, &SearchConfig { budget: Some(5000), ..Default::default() }).unwrap();
        assert!(!first.complete);
        assert_eq!(first.resume_from, Some(5000));
        let rest = search(&c, &SearchConfig { start: 5000, ..Default::default() }).unwrap();
        let mut hits = first.hits.clone();
        hits.extend(rest.hits);
        hits.sort();
        assert_eq!(hits, full.hits);
    }

    #[test]
    fn sampling_is_reproducible() {
        let c = ctx(&[1, 1, 1]);
        let cfg = SearchConfig { mode: SearchMode::Sample, budget: Some(9000), seed: 7, jobs: 2, ..Default::default() };
        let a = search(&c, &cfg).unwrap();
        let b = search(&c, &SearchConfig { jobs: 3, ..cfg.clone() }).unwrap();
        assert_eq!(a.hits, b.hits);
        assert_eq!(a.nu_histogram, b.nu_histogram);
        assert_eq!(a.candidates_examined, 9000);
    }

    #[test]
    fn square_order_collects_statistics_only() {
        let rep = search(&ctx(&[1, 1]), &SearchConfig::default()).unwrap();
        assert!(rep.square_order && rep.hits.is_empty());
        assert_eq!(rep.nu_histogram.values().sum::<u64>(), 16);
    }
}
