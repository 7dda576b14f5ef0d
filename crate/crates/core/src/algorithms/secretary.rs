use crate::constants::floor_div_e;
use crate::error::Result;
use crate::harness::{
    Decision, OnlineAlgorithm, Randomness, RevealContext, StartInfo, Strategy, Token,
};

#[derive(Debug, Clone)]
struct ClassState {
    sample: usize,
    seen: usize,
    best: Option<Token>,
    done: bool,
}

/// One classical secretary per class: each class observes the first
/// `floor(|class| / e)` of its arrivals, then takes the first later arrival
/// heavier than all of them. Elements outside every class are ignored.
#[derive(Debug, Clone)]
pub(crate) struct ClassSecretaries {
    class_of: Vec<Option<usize>>,
    states: Vec<ClassState>,
}

impl ClassSecretaries {
    pub(crate) fn new(ground_size: usize, classes: &[Vec<usize>]) -> Self {
        let mut class_of = vec![None; ground_size];
        let states = classes
            .iter()
            .enumerate()
            .map(|(c, members)| {
                for &e in members {
                    class_of[e] = Some(c);
                }
                ClassState {
                    sample: floor_div_e(members.len()),
                    seen: 0,
                    best: None,
                    done: false,
                }
            })
            .collect();
        Self { class_of, states }
    }

    /// Whether `token` is selected in its class. Ineligible tokens still
    /// count as arrivals and can set the sample maximum, but are never taken.
    pub(crate) fn offer(&mut self, token: Token, ctx: &mut RevealContext<'_>, eligible: bool) -> bool {
        let Some(c) = self.class_of[token.element()] else {
            return false;
        };
        let st = &mut self.states[c];
        st.seen += 1;
        if st.done {
            return false;
        }
        if st.seen <= st.sample {
            if st.best.map_or(true, |b| ctx.heavier(token, b)) {
                st.best = Some(token);
            }
            return false;
        }
        let beats = st.best.map_or(true, |b| ctx.heavier(token, b));
        if beats && eligible {
            st.done = true;
        }
        beats && eligible
    }
}

/// Samples `floor(n/e)` arrivals and accepts the first later element heavier
/// than all of them (skipping elements that would create a dependency).
#[derive(Debug, Clone, Default)]
pub struct Classical;

impl Strategy for Classical {
    fn name(&self) -> String {
        "classical".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(ClassicalRun { inner: None })
    }
}

struct ClassicalRun {
    inner: Option<ClassSecretaries>,
}

impl OnlineAlgorithm for ClassicalRun {
    fn start(&mut self, info: &StartInfo<'_>, _: &mut dyn Randomness) -> Result<()> {
        self.inner = Some(ClassSecretaries::new(info.n, &[(0..info.n).collect()]));
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        let eligible = ctx.can_accept(token);
        let take = self.inner.as_mut().expect("started").offer(token, ctx, eligible);
        Ok(if take { Decision::Accept } else { Decision::Reject })
    }
}

/// Accepts nothing.
#[derive(Debug, Clone, Default)]
pub struct RejectAll;

impl Strategy for RejectAll {
    fn name(&self) -> String {
        "reject-all".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(RejectAll)
    }
}

impl OnlineAlgorithm for RejectAll {
    fn start(&mut self, _: &StartInfo<'_>, _: &mut dyn Randomness) -> Result<()> {
        Ok(())
    }

    fn reveal(&mut self, _: Token, _: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        Ok(Decision::Reject)
    }
}

/// Weight-blind greedy: accepts every arrival that keeps the output
/// independent. It is `c*(M)`-competitive in the zero information model,
/// where `c*(M)` bounds the smallest cocircuit through any element.
#[derive(Debug, Clone, Default)]
pub struct GreedyCocircuit;

impl Strategy for GreedyCocircuit {
    fn name(&self) -> String {
        "greedy-cocircuit".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(GreedyCocircuit)
    }
}

impl OnlineAlgorithm for GreedyCocircuit {
    fn start(&mut self, _: &StartInfo<'_>, _: &mut dyn Randomness) -> Result<()> {
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        Ok(if ctx.can_accept(token) { Decision::Accept } else { Decision::Reject })
    }
}
