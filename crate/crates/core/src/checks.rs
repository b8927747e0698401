//! Property suites over exhaustively generated small structures. Each suite
//! compares a fast kernel against a brute-force oracle or checks an identity
//! the kernels must satisfy, and reports the first counterexample.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base_change::verify_base_change;
use crate::budget::{Budget, SearchOutcome};
use crate::cauchy::{
    cauchy_complete_trs, completeness_by_definition, factor_through_completion, is_cauchy_complete_trs,
    search_other_factorization, yoneda_check, CompletionResult,
};
use crate::enumerate::{object_maps, regular_up_to, totally_regular_up_to};
use crate::error::{QError, Result};
use crate::morita::morita_check;
use crate::quantaloid::Quantaloid;
use crate::structure::{
    check_object_map, semifunctors_equivalent, stable_objects, stable_objects_by_definition, EnrichedStructure,
    ObjectMap,
};

/// The available suites. Their command-line ids are given by [`Suite::id`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Stable objects by formula agree with the definition on regular structures.
    Stability,
    /// The one-object probe test agrees with convergence of every left adjoint.
    ProbeTest,
    /// The completion represents every probe through the embedding.
    Representation,
    /// The embedding into the completion induces an inverse pair.
    EmbeddingInverse,
    /// Completions are complete.
    CompletionComplete,
    /// Regular semifunctors into complete structures extend uniquely along the embedding.
    Factorization,
    /// Isomorphism of structures agrees with equivalence of their completions.
    Morita,
    /// Transport across the change of base to the split-idempotent completion.
    BaseChange,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Stability,
        Suite::ProbeTest,
        Suite::Representation,
        Suite::EmbeddingInverse,
        Suite::CompletionComplete,
        Suite::Factorization,
        Suite::Morita,
        Suite::BaseChange,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Stability => "lemma4",
            Suite::ProbeTest => "lemma13",
            Suite::Representation => "prop15",
            Suite::EmbeddingInverse => "prop16",
            Suite::CompletionComplete => "prop17",
            Suite::Factorization => "prop18",
            Suite::Morita => "prop19",
            Suite::BaseChange => "prop23",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| QError::UnknownSuite(s.to_string()))
    }
}

/// Instance bounds and sampling for a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub max_objects: usize,
    pub seed: u64,
    /// Sample size for the suites that sample.
    pub samples: usize,
    /// Pair counts up to this are checked exhaustively by the Morita suite.
    pub exhaustive_pairs: usize,
    pub budget: Budget,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_objects: 2,
            seed: 0,
            samples: 50,
            exhaustive_pairs: 1000,
            budget: Budget::default(),
        }
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: Suite,
    pub instances: usize,
    /// Some search hit its budget; the verdict is then inconclusive.
    pub budget_exceeded: bool,
    /// First counterexample, if any.
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(suite: Suite) -> Self {
        CheckReport {
            suite,
            instances: 0,
            budget_exceeded: false,
            witness: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none() && !self.budget_exceeded
    }

    fn fail(&mut self, msg: String) {
        if self.witness.is_none() {
            self.witness = Some(msg);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (&self.witness, self.budget_exceeded) {
            (Some(_), _) => "fails",
            (None, true) => "budget exceeded",
            (None, false) => "holds",
        };
        write!(f, "{}: {} ({} instances)", self.suite, verdict, self.instances)?;
        if let Some(w) = &self.witness {
            write!(f, "\nwitness: {w}")?;
        }
        Ok(())
    }
}

/// Objects with their types and the hom-matrix, by name.
pub fn describe(s: &EnrichedStructure) -> String {
    let q = s.base();
    let obs: Vec<String> = (0..s.n_objects())
        .map(|x| format!("{}:{}", s.obs().name(x), q.object_name(s.type_of(x))))
        .collect();
    let rows: Vec<String> = s.hom_matrix().entry_names(q).into_iter().map(|r| r.join(" ")).collect();
    format!("[{}] hom [{}]", obs.join(", "), rows.join("; "))
}

fn describe_map(f: &ObjectMap) -> String {
    format!("{} -> {} via {:?}", describe(f.dom()), describe(f.cod()), f.map())
}

pub fn run_suite(suite: Suite, q: &Arc<Quantaloid>, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new(suite);
    match suite {
        Suite::Stability => stability(q, cfg, &mut r)?,
        Suite::ProbeTest => probe_test(q, cfg, &mut r)?,
        Suite::Representation | Suite::EmbeddingInverse | Suite::CompletionComplete => {
            completions(suite, q, cfg, &mut r)?
        }
        Suite::Factorization => factorization(q, cfg, &mut r)?,
        Suite::Morita => morita(q, cfg, &mut r)?,
        Suite::BaseChange => {
            let report = verify_base_change(q, cfg.max_objects, cfg.samples, cfg.seed)?;
            r.instances = report.structures + report.semidistributor_pairs + report.composites + report.normal_categories;
            if let Some(w) = report.failures.into_iter().next() {
                r.fail(w);
            }
        }
    }
    Ok(r)
}

fn stability(q: &Arc<Quantaloid>, cfg: &CheckConfig, r: &mut CheckReport) -> Result<()> {
    for s in regular_up_to(q, cfg.max_objects) {
        r.instances += 1;
        let (fast, slow) = (stable_objects(&s)?, stable_objects_by_definition(&s)?);
        if fast != slow {
            r.fail(format!("{}: formula {:?}, definition {:?}", describe(&s), fast, slow));
        }
    }
    Ok(())
}

fn probe_test(q: &Arc<Quantaloid>, cfg: &CheckConfig, r: &mut CheckReport) -> Result<()> {
    let corpus = totally_regular_up_to(q, cfg.max_objects);
    for b in &corpus {
        r.instances += 1;
        let fast = is_cauchy_complete_trs(b)?.complete;
        let slow = completeness_by_definition(b, &corpus)?;
        if fast != slow.is_none() {
            let why = match slow {
                Some((i, phi)) => format!("left adjoint {:?} from {} does not converge", phi.mat().entries(), describe(&corpus[i])),
                None => "every left adjoint converges".to_string(),
            };
            r.fail(format!("{}: probe test says {fast}, but {why}", describe(b)));
        }
    }
    Ok(())
}

fn completions(suite: Suite, q: &Arc<Quantaloid>, cfg: &CheckConfig, r: &mut CheckReport) -> Result<()> {
    for b in totally_regular_up_to(q, cfg.max_objects) {
        r.instances += 1;
        let c = cauchy_complete_trs(&b)?;
        let ok = match suite {
            Suite::Representation => {
                let y = yoneda_check(&b, &c)?;
                y.fully_faithful && y.represents_columns && y.represents_rows
            }
            Suite::EmbeddingInverse => yoneda_check(&b, &c)?.inverse_pair,
            _ => is_cauchy_complete_trs(&c.completed)?.complete,
        };
        if !ok {
            r.fail(format!("{} with completion {}", describe(&b), describe(&c.completed)));
        }
    }
    Ok(())
}

/// Every regular semifunctor from a small structure into the completion of a small structure.
pub fn factorization_instances(
    q: &Arc<Quantaloid>,
    max_objects: usize,
) -> Result<Vec<(Arc<CompletionResult>, ObjectMap)>> {
    let corpus = totally_regular_up_to(q, max_objects);
    let completions = corpus
        .iter()
        .map(|a| cauchy_complete_trs(a).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for a_cc in &completions {
        for b_cc in &completions {
            for f in object_maps(a_cc.embed.dom(), &b_cc.completed) {
                if check_object_map(&f).regular_semifunctor {
                    out.push((a_cc.clone(), f));
                }
            }
        }
    }
    Ok(out)
}

fn factorization(q: &Arc<Quantaloid>, cfg: &CheckConfig, r: &mut CheckReport) -> Result<()> {
    let all = factorization_instances(q, cfg.max_objects)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sample: Vec<&(Arc<CompletionResult>, ObjectMap)> = if all.len() <= cfg.samples {
        all.iter().collect()
    } else {
        let mut idx: Vec<usize> = (0..all.len()).collect::<Vec<_>>().choose_multiple(&mut rng, cfg.samples).copied().collect();
        idx.sort_unstable();
        idx.into_iter().map(|i| &all[i]).collect()
    };
    for (a_cc, f) in sample {
        r.instances += 1;
        let g = factor_through_completion(f, a_cc)?;
        let gk = a_cc.embed.then(&g)?;
        if !check_object_map(&g).regular_semifunctor || !semifunctors_equivalent(&gk, f)? {
            r.fail(format!("extension {:?} of {} does not restrict to it", g.map(), describe_map(f)));
            continue;
        }
        match search_other_factorization(f, a_cc, &g, &cfg.budget)? {
            SearchOutcome::Found(h) => r.fail(format!(
                "{} has inequivalent extensions {:?} and {:?}",
                describe_map(f),
                g.map(),
                h.map()
            )),
            SearchOutcome::BudgetExceeded => r.budget_exceeded = true,
            SearchOutcome::NotFound => {}
        }
    }
    Ok(())
}

fn morita(q: &Arc<Quantaloid>, cfg: &CheckConfig, r: &mut CheckReport) -> Result<()> {
    let corpus = totally_regular_up_to(q, cfg.max_objects);
    let n = corpus.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    if pairs.len() > cfg.exhaustive_pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        pairs = pairs.choose_multiple(&mut rng, cfg.samples).copied().collect();
        pairs.sort_unstable();
    }
    for (i, j) in pairs {
        r.instances += 1;
        let (a, b) = (&corpus[i], &corpus[j]);
        let m = morita_check(a, b, &cfg.budget)?;
        if m.isomorphism.is_exceeded() || m.equivalence.is_exceeded() {
            r.budget_exceeded = true;
        } else if !m.agree() {
            r.fail(format!(
                "{} and {}: isomorphic {}, completions equivalent {}",
                describe(a),
                describe(b),
                m.isomorphism.is_found(),
                m.equivalence.is_found()
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::fixtures::{n3, q2, q3};

    #[test]
    fn suite_ids_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("lemma99".parse::<Suite>(), Err(QError::UnknownSuite(_))));
    }

    #[test]
    fn all_suites_hold_on_q2() {
        let q = Arc::new(q2());
        for s in Suite::ALL {
            let r = run_suite(s, &q, &CheckConfig::default()).unwrap();
            assert!(r.holds(), "{r}");
            assert!(r.instances > 0, "{r}");
        }
    }

    #[test]
    fn cheap_suites_hold_on_q3_and_n3() {
        for base in [q3(), n3()] {
            let q = Arc::new(base);
            for s in [Suite::Stability, Suite::Representation, Suite::EmbeddingInverse, Suite::CompletionComplete] {
                let r = run_suite(s, &q, &CheckConfig::default()).unwrap();
                assert!(r.holds(), "{r}");
            }
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let q = Arc::new(q3());
        let cfg = CheckConfig {
            samples: 10,
            seed: 3,
            ..CheckConfig::default()
        };
        let a = run_suite(Suite::Factorization, &q, &cfg).unwrap();
        let b = run_suite(Suite::Factorization, &q, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.instances, 10);
    }
}
