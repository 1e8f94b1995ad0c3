//! Verification instances: enumeration, filtering by the command line, execution.

use springer_qh::calogero_moser as cm;
use springer_qh::classical;
use springer_qh::qh_stable as qh;
use springer_qh::report::VerifyReport;
use springer_qh::rootdata::{Family, RootSystem, Weight};
use springer_qh::toda;
use springer_qh::weyl::{WeylElem, WeylGroup};
use springer_qh::{Error, Result};
use std::fmt::Write;

pub const SUITES: &[&str] = &[
    "sl2", "traces", "eigencolumn", "automorphism", "matching", "appendixB", "typeD", "oddvanish", "toda", "cm",
    "hamiltonian", "tracefree", "classical", "all",
];

/// Atomic suites each composite name expands to.
fn members(suite: &str) -> Option<Vec<&'static str>> {
    let m: &[&'static str] = match suite {
        "sl2" => &["sl2-product", "sl2-relation"],
        "traces" => &["traces"],
        "eigencolumn" => &["eigencolumn"],
        "automorphism" => &["automorphism", "conjugation"],
        "conjugation" => &["conjugation"],
        "matching" => &["matching"],
        "appendixB" => &["cyclic", "anticauchy"],
        "cyclic" => &["cyclic"],
        "anticauchy" => &["anticauchy"],
        "typeD" => &["typeD"],
        "oddvanish" => &["oddvanish"],
        "toda" => &["toda", "toda-c-extension", "toda-d", "tridiag"],
        "toda-c-extension" => &["toda-c-extension"],
        "toda-d" => &["toda-d"],
        "tridiag" => &["tridiag"],
        "cm" => &["cm", "dunkl-commute"],
        "dunkl-commute" => &["dunkl-commute"],
        "hamiltonian" => &["hamiltonian"],
        "tracefree" => &["tracefree"],
        "classical" => &["classical", "theta-consistency"],
        "theta-consistency" => &["theta-consistency"],
        "sl2-product" => &["sl2-product"],
        "sl2-relation" => &["sl2-relation"],
        "all" => {
            return Some(
                ["sl2", "traces", "eigencolumn", "automorphism", "matching", "appendixB", "typeD", "oddvanish", "toda", "cm", "hamiltonian", "tracefree", "classical"]
                    .iter()
                    .flat_map(|s| members(s).unwrap())
                    .collect(),
            )
        }
        _ => return None,
    };
    Some(m.to_vec())
}

pub fn is_suite(name: &str) -> bool {
    members(name).is_some()
}

/// A root system as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RsSpec {
    pub family: Family,
    pub rank: usize,
    pub special_linear: bool,
}

impl RsSpec {
    pub fn gl(family: Family, rank: usize) -> RsSpec {
        RsSpec { family, rank, special_linear: false }
    }

    pub fn sl(rank: usize) -> RsSpec {
        RsSpec { family: Family::A, rank, special_linear: true }
    }

    pub fn build(&self) -> Result<RootSystem> {
        if self.special_linear {
            if self.family != Family::A {
                return Err(Error::Domain("--special-linear applies to family A only".into()));
            }
            RootSystem::special_linear(self.rank)
        } else {
            RootSystem::new(self.family, self.rank)
        }
    }
}

/// One verification instance; `weight` is kept as a spec string until run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub suite: &'static str,
    pub rs: Option<RsSpec>,
    /// Rank for suites parametrized by `n` alone.
    pub n: Option<usize>,
    pub weight: Option<String>,
    pub k: Option<u32>,
    pub u: Option<String>,
    pub w: Option<String>,
}

impl Job {
    fn new(suite: &'static str) -> Job {
        Job { suite, rs: None, n: None, weight: None, k: None, u: None, w: None }
    }

    fn on(suite: &'static str, rs: RsSpec) -> Job {
        Job { rs: Some(rs), ..Job::new(suite) }
    }

    fn sized(suite: &'static str, n: usize) -> Job {
        Job { n: Some(n), ..Job::new(suite) }
    }

    fn weight(mut self, w: &str) -> Job {
        self.weight = Some(w.to_string());
        self
    }

    fn k(mut self, k: u32) -> Job {
        self.k = Some(k);
        self
    }

    /// Stable identifier used for ordering, caching and skipped-instance lists.
    pub fn key(&self) -> String {
        let mut s = self.suite.to_string();
        if let Some(rs) = self.rs {
            let _ = write!(s, " family={} rank={}", rs.family, rs.rank);
            if rs.special_linear {
                s.push_str(" special-linear");
            }
        }
        if let Some(n) = self.n {
            let _ = write!(s, " rank={n}");
        }
        for (name, v) in [("weight", &self.weight), ("u", &self.u), ("w", &self.w)] {
            if let Some(v) = v {
                let _ = write!(s, " {name}={v}");
            }
        }
        if let Some(k) = self.k {
            let _ = write!(s, " k={k}");
        }
        s
    }

    /// Command-line flags naming this instance, in reproducer order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let mut p = Vec::new();
        if let Some(rs) = self.rs {
            p.push(("family", rs.family.to_string()));
            p.push(("rank", rs.rank.to_string()));
            if rs.special_linear {
                p.push(("special-linear", "true".into()));
            }
        }
        if let Some(n) = self.n {
            p.push(("rank", n.to_string()));
        }
        for (name, v) in [("weight", &self.weight), ("u", &self.u), ("w", &self.w)] {
            if let Some(v) = v {
                p.push((name, v.clone()));
            }
        }
        if let Some(k) = self.k {
            p.push(("k", k.to_string()));
        }
        p
    }

    pub fn run(&self, max_weyl: usize) -> Result<Vec<VerifyReport>> {
        let group = || -> Result<WeylGroup> {
            let rs = self.rs.ok_or_else(|| Error::Domain(format!("suite {} needs --family and --rank", self.suite)))?.build()?;
            WeylGroup::new(&rs, max_weyl)
        };
        let n = || self.n.ok_or_else(|| Error::Domain(format!("suite {} needs --rank", self.suite)));
        let k = || self.k.ok_or_else(|| Error::Domain(format!("suite {} needs --k", self.suite)));
        let weight = |g: &WeylGroup| -> Result<Weight> {
            g.rs.parse_weight(self.weight.as_deref().unwrap_or("-e1"))
        };
        let one = |r: Result<VerifyReport>| r.map(|r| vec![r]);
        match self.suite {
            "sl2-product" => one(qh::verify_sl2_product(&group()?)),
            "sl2-relation" => one(qh::verify_sl2_relation(&group()?)),
            "traces" => {
                let g = group()?;
                one(qh::verify_trace_relation(&g, &weight(&g)?, k()?))
            }
            "eigencolumn" => {
                let g = group()?;
                one(qh::verify_eigencolumn(&g, &weight(&g)?))
            }
            "automorphism" => {
                let g = group()?;
                let lambda = weight(&g)?;
                let us = select(&g, self.u.as_deref())?;
                let ws = select(&g, self.w.as_deref())?;
                let mut out = Vec::new();
                for u in &us {
                    for w in &ws {
                        out.push(qh::verify_automorphism(&g, u, &lambda, w)?);
                    }
                }
                Ok(out)
            }
            "conjugation" => {
                let g = group()?;
                let lambda = weight(&g)?;
                select(&g, self.u.as_deref())?.iter().map(|u| qh::verify_conjugation_law(&g, u, &lambda)).collect()
            }
            "matching" => one(classical::verify_matching_theorem(n()?)),
            "cyclic" => one(classical::verify_cyclic_sum(n()?)),
            "anticauchy" => one(classical::anticauchy_det(n()?).map(|t| t.2)),
            "typeD" => one(classical::verify_type_d(n()?)),
            "oddvanish" => {
                let rs = self.rs.ok_or_else(|| Error::Domain("oddvanish needs --family and --rank".into()))?;
                one(classical::verify_odd_vanishing(rs.family, rs.rank))
            }
            "toda" => {
                let rs = self.rs.ok_or_else(|| Error::Domain("toda needs --family and --rank".into()))?;
                match rs.family {
                    Family::A => one(toda::verify_givental_kim(rs.rank)),
                    Family::B => one(toda::verify_type_b_limit(rs.rank)),
                    Family::C => one(toda::verify_type_c_extension(rs.rank)),
                    Family::D => one(toda::verify_type_d_limit(rs.rank)),
                }
            }
            "toda-c-extension" => one(toda::verify_type_c_extension(n()?)),
            "toda-d" => one(toda::verify_type_d_limit(n()?)),
            "tridiag" => one(toda::verify_tridiag_lemma(n()?)),
            "cm" => {
                let g = group()?;
                one(cm::verify_cm_corollary(&g, &weight(&g)?, k()?))
            }
            "dunkl-commute" => one(cm::verify_dunkl_commutativity(&group()?)),
            "hamiltonian" => {
                let g = group()?;
                one(cm::verify_hamiltonian(&g, &weight(&g)?))
            }
            "tracefree" => {
                let g = group()?;
                one(cm::verify_tracefree(&g, &weight(&g)?, k()?))
            }
            "classical" => {
                let g = group()?;
                match (&self.weight, self.k) {
                    (Some(_), Some(k)) => one(classical::verify_relation_limit(&g, &weight(&g)?, k)),
                    _ => one(classical::verify_presentation_limits(&g.rs)),
                }
            }
            "theta-consistency" => one(classical::verify_theta_consistency(&group()?)),
            other => Err(Error::Domain(format!("unknown suite {other}"))),
        }
    }
}

/// All elements, or the one named by a word such as `s1s2` or `id`.
fn select(g: &WeylGroup, word: Option<&str>) -> Result<Vec<WeylElem>> {
    match word {
        None => Ok(g.elements().to_vec()),
        Some(w) => Ok(vec![g.from_word(&parse_word(w)?)?]),
    }
}

pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s == "id" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('s')
        .skip(1)
        .map(|p| p.parse::<usize>().map_err(|_| Error::Domain(format!("bad Weyl word {s:?}"))))
        .collect::<Result<Vec<_>>>()
        .and_then(|v| if s.starts_with('s') { Ok(v) } else { Err(Error::Domain(format!("bad Weyl word {s:?}"))) })
}

/// The instances each atomic suite runs by default.
fn defaults(suite: &'static str) -> Vec<Job> {
    let (a, b, c, d) = (Family::A, Family::B, Family::C, Family::D);
    let sl2 = RsSpec::sl(2);
    let gl3 = RsSpec::gl(a, 3);
    let mut v = Vec::new();
    match suite {
        "sl2-product" | "sl2-relation" => v.push(Job::on(suite, sl2)),
        "traces" => {
            v.extend((1..=4).map(|k| Job::on(suite, sl2).weight("fund:1").k(k)));
            for w in ["-e1", "rho"] {
                v.extend((1..=3).map(|k| Job::on(suite, gl3).weight(w).k(k)));
            }
            for f in [b, c] {
                v.extend((1..=2).map(|k| Job::on(suite, RsSpec::gl(f, 2)).weight("-e1").k(k)));
            }
        }
        "eigencolumn" => {
            v.push(Job::on(suite, sl2).weight("fund:1"));
            v.push(Job::on(suite, gl3).weight("-e1"));
            v.push(Job::on(suite, gl3).weight("rho"));
            v.push(Job::on(suite, RsSpec::gl(b, 2)).weight("-e1"));
        }
        "automorphism" => {
            v.push(Job::on(suite, sl2).weight("fund:1"));
            v.extend((1..=2).map(|i| Job::on(suite, gl3).weight(&format!("fund:{i}"))));
        }
        "conjugation" => {
            v.push(Job::on(suite, sl2).weight("fund:1"));
            v.push(Job::on(suite, RsSpec::gl(a, 2)).weight("fund:1"));
            v.extend((1..=2).map(|i| Job::on(suite, gl3).weight(&format!("fund:{i}"))));
            for f in [b, c, d] {
                v.extend((1..=2).map(|i| Job::on(suite, RsSpec::gl(f, 2)).weight(&format!("fund:{i}"))));
            }
        }
        "matching" => v.extend((2..=5).map(|n| Job::sized(suite, n))),
        "cyclic" => v.extend((2..=6).map(|n| Job::sized(suite, n))),
        "anticauchy" => v.extend((1..=6).map(|n| Job::sized(suite, n))),
        "typeD" => v.extend((2..=3).map(|n| Job::sized(suite, n))),
        "oddvanish" => {
            for f in [b, c, d] {
                v.extend((2..=3).map(|n| Job::on(suite, RsSpec::gl(f, n))));
            }
        }
        "toda" => {
            v.extend((1..=4).map(|n| Job::on(suite, RsSpec::gl(a, n))));
            v.extend((1..=3).map(|n| Job::on(suite, RsSpec::gl(b, n))));
        }
        "toda-c-extension" => v.extend((1..=3).map(|n| Job::sized(suite, n))),
        "toda-d" => v.extend((2..=3).map(|n| Job::sized(suite, n))),
        "tridiag" => v.extend((1..=6).map(|n| Job::sized(suite, n))),
        "cm" => {
            v.extend((1..=3).map(|k| Job::on(suite, sl2).weight("fund:1").k(k)));
            v.extend((1..=3).map(|k| Job::on(suite, gl3).weight("-e1").k(k)));
            v.push(Job::on(suite, RsSpec::gl(b, 2)).weight("-e1").k(2));
        }
        "dunkl-commute" => {
            v.push(Job::on(suite, sl2));
            v.push(Job::on(suite, RsSpec::gl(a, 2)));
            v.push(Job::on(suite, gl3));
            for f in [b, c, d] {
                v.push(Job::on(suite, RsSpec::gl(f, 2)));
            }
        }
        "hamiltonian" => {
            v.push(Job::on(suite, sl2).weight("fund:1"));
            v.push(Job::on(suite, gl3).weight("rho"));
        }
        "tracefree" => {
            v.push(Job::on(suite, sl2).weight("fund:1").k(2));
            v.push(Job::on(suite, RsSpec::gl(a, 2)).weight("rho").k(2));
            for f in [b, c, d] {
                v.push(Job::on(suite, RsSpec::gl(f, 2)).weight("rho").k(2));
            }
        }
        "classical" => {
            v.extend((1..=3).map(|n| Job::on(suite, RsSpec::gl(a, n))));
            v.extend((2..=3).map(|n| Job::on(suite, RsSpec::sl(n))));
            for f in [b, c] {
                v.extend((1..=3).map(|n| Job::on(suite, RsSpec::gl(f, n))));
            }
            v.extend((2..=3).map(|n| Job::on(suite, RsSpec::gl(d, n))));
            v.extend((1..=4).map(|k| Job::on(suite, sl2).weight("fund:1").k(k)));
            for w in ["-e1", "rho"] {
                v.extend((1..=3).map(|k| Job::on(suite, gl3).weight(w).k(k)));
            }
            for f in [b, c] {
                v.extend((1..=2).map(|k| Job::on(suite, RsSpec::gl(f, 2)).weight("-e1").k(k)));
            }
        }
        "theta-consistency" => {
            v.extend((1..=3).map(|n| Job::on(suite, RsSpec::gl(a, n))));
            for f in [b, c] {
                v.extend((1..=3).map(|n| Job::on(suite, RsSpec::gl(f, n))));
            }
            v.extend((2..=3).map(|n| Job::on(suite, RsSpec::gl(d, n))));
        }
        _ => {}
    }
    v
}

/// Instance selection from the command line.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub family: Option<Family>,
    pub rank: Option<usize>,
    pub special_linear: bool,
    pub weight: Option<String>,
    pub k: Option<Vec<u32>>,
    pub u: Option<String>,
    pub w: Option<String>,
}

impl Selection {
    fn is_empty(&self) -> bool {
        self.family.is_none() && self.rank.is_none() && self.weight.is_none() && self.k.is_none() && self.u.is_none() && self.w.is_none()
    }

    fn rank_of(&self, job: &Job) -> Option<usize> {
        job.rs.map(|r| r.rank).or(job.n)
    }

    /// Whether a default instance agrees with every given selector.
    fn matches(&self, job: &Job) -> bool {
        if let Some(f) = self.family {
            match job.rs {
                Some(rs) if rs.family == f && rs.special_linear == self.special_linear => {}
                _ => return false,
            }
        }
        if let Some(r) = self.rank {
            if self.rank_of(job) != Some(r) {
                return false;
            }
        }
        if self.family.is_none() && self.special_linear && !job.rs.is_some_and(|r| r.special_linear) {
            return false;
        }
        if let Some(w) = &self.weight {
            if !same_weight(job, w) {
                return false;
            }
        }
        if let Some(ks) = &self.k {
            if !job.k.is_some_and(|k| ks.contains(&k)) {
                return false;
            }
        }
        true
    }

    /// An instance built from the selectors alone, when no default matches.
    fn synthesize(&self, suite: &'static str) -> Vec<Job> {
        let Some(rank) = self.rank else { return Vec::new() };
        let rs = RsSpec { family: self.family.unwrap_or(Family::A), rank, special_linear: self.special_linear };
        let base = match suite {
            "matching" | "cyclic" | "anticauchy" | "typeD" | "toda-c-extension" | "toda-d" | "tridiag" => {
                if self.family.is_some() {
                    return Vec::new();
                }
                Job::sized(suite, rank)
            }
            "oddvanish" | "toda" => {
                if self.family.is_none() {
                    return Vec::new();
                }
                Job::on(suite, rs)
            }
            _ => {
                if self.family.is_none() {
                    return Vec::new();
                }
                Job::on(suite, rs)
            }
        };
        let uses_weight = matches!(suite, "traces" | "eigencolumn" | "automorphism" | "conjugation" | "cm" | "hamiltonian" | "tracefree" | "classical");
        let uses_k = matches!(suite, "traces" | "cm" | "tracefree") || (suite == "classical" && self.weight.is_some());
        let mut job = base;
        if uses_weight && (suite != "classical" || self.weight.is_some()) {
            let default = if matches!(suite, "hamiltonian" | "tracefree") { "rho" } else { "-e1" };
            job.weight = Some(self.weight.clone().unwrap_or_else(|| default.into()));
        }
        if !uses_k {
            return vec![job];
        }
        let ks = self.k.clone().unwrap_or_else(|| vec![2]);
        ks.into_iter().map(|k| Job { k: Some(k), ..job.clone() }).collect()
    }
}

fn same_weight(job: &Job, spec: &str) -> bool {
    let (Some(rs), Some(w)) = (job.rs, &job.weight) else { return false };
    let Ok(rs) = rs.build() else { return false };
    match (rs.parse_weight(spec), rs.parse_weight(w)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

pub fn plan(suite: &str, sel: &Selection) -> Result<Vec<Job>> {
    let atoms = members(suite).ok_or_else(|| Error::Domain(format!("unknown suite {suite}")))?;
    let mut jobs = Vec::new();
    for atom in atoms {
        let defs = defaults(atom);
        let mut chosen: Vec<Job> = defs.into_iter().filter(|j| sel.matches(j)).collect();
        if chosen.is_empty() && !sel.is_empty() {
            chosen = sel.synthesize(atom);
        }
        for j in &mut chosen {
            if matches!(atom, "automorphism" | "conjugation") {
                j.u = sel.u.clone();
                j.w = if atom == "automorphism" { sel.w.clone() } else { None };
            }
        }
        jobs.extend(chosen);
    }
    if jobs.is_empty() {
        return Err(Error::Domain(format!("no instances of suite {suite} match the given options")));
    }
    Ok(jobs)
}
