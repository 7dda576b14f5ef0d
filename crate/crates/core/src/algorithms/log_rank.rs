//! The comparison-only `O(log r)` algorithm.

use crate::error::Result;
use crate::harness::{Decision, OnlineAlgorithm, Randomness, RevealContext, StartInfo, Strategy, Token};
use crate::rational::ratio;

use super::secretary::ClassSecretaries;

/// `floor(log_3 k)`, taken to be 0 for `k = 0`.
pub fn floor_log3(k: usize) -> u32 {
    let mut t = 0;
    let mut power = 3usize;
    while power <= k {
        t += 1;
        power = power.saturating_mul(3);
    }
    t
}

/// Levels `1, 3, ..., 3^t`.
pub fn level_grid(t: u32) -> Vec<usize> {
    (0..=t).map(|j| 3usize.pow(j)).collect()
}

/// Exponents `t` the algorithm chooses from: `floor(log_3 r)` when the rank
/// is known, otherwise `floor(log_3 k)` or one more, where `k` is the rank of
/// the sample.
pub fn exponent_choices(known_rank: Option<usize>, sample_rank: usize) -> Vec<u32> {
    match known_rank {
        Some(r) => vec![floor_log3(r)],
        None => {
            let t = floor_log3(sample_rank);
            vec![t, t + 1]
        }
    }
}

/// With probability 1/2 the classical secretary; otherwise sample the first
/// `Bin(n, 1/2)` arrivals, compute the sample optimum `a_1 > a_2 > ...` by
/// greedy, draw a level `l` from `{1, 3, ..., 3^t}` and run greedy on later
/// arrivals heavier than `a_l` (on all later arrivals when `l` exceeds the
/// sample rank). Weights are only compared, never read.
#[derive(Debug, Clone, Default)]
pub struct LogRankAlgorithm {
    rank: Option<usize>,
}

impl LogRankAlgorithm {
    pub fn new(rank: Option<usize>) -> Self {
        Self { rank }
    }
}

impl Strategy for LogRankAlgorithm {
    fn name(&self) -> String {
        "log-rank".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(LogRankRun { rank: self.rank, state: State::Idle })
    }
}

enum State {
    Idle,
    Classical(ClassSecretaries),
    Sampling { size: usize, sample: Vec<Token> },
    Greedy { threshold: Option<Token> },
}

struct LogRankRun {
    rank: Option<usize>,
    state: State,
}

impl LogRankRun {
    fn close_sample(&mut self, sample: Vec<Token>, ctx: &mut RevealContext<'_>, rng: &mut dyn Randomness) {
        let mut sorted = sample;
        ctx.sort_heaviest_first(&mut sorted);
        let mut basis: Vec<Token> = Vec::new();
        for t in sorted {
            basis.push(t);
            if !ctx.is_independent(&basis) {
                basis.pop();
            }
        }
        let choices = exponent_choices(self.rank, basis.len());
        let t = choices[rng.uniform_index(choices.len())];
        let grid = level_grid(t);
        let level = grid[rng.uniform_index(grid.len())];
        let threshold = basis.get(level - 1).copied();
        self.state = State::Greedy { threshold };
    }
}

impl OnlineAlgorithm for LogRankRun {
    fn start(&mut self, info: &StartInfo<'_>, rng: &mut dyn Randomness) -> Result<()> {
        self.state = if rng.uniform_index(2) == 0 {
            State::Classical(ClassSecretaries::new(info.n, &[(0..info.n).collect()]))
        } else {
            State::Sampling {
                size: rng.binomial(info.n, &ratio(1, 2)),
                sample: Vec::new(),
            }
        };
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, rng: &mut dyn Randomness) -> Result<Decision> {
        if let State::Sampling { size, sample } = &mut self.state {
            if sample.len() < *size {
                sample.push(token);
                return Ok(Decision::Reject);
            }
            let sample = std::mem::take(sample);
            self.close_sample(sample, ctx, rng);
        }
        let take = match &mut self.state {
            State::Classical(s) => {
                let eligible = ctx.can_accept(token);
                s.offer(token, ctx, eligible)
            }
            State::Greedy { threshold } => {
                threshold.map_or(true, |a| ctx.heavier(token, a)) && ctx.can_accept(token)
            }
            State::Idle | State::Sampling { .. } => unreachable!("started and sample closed"),
        };
        Ok(if take { Decision::Accept } else { Decision::Reject })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_examples() {
        assert_eq!(floor_log3(12), 2);
        assert_eq!(level_grid(floor_log3(12)), vec![1, 3, 9]);
        assert_eq!(exponent_choices(None, 5), vec![1, 2]);
        assert_eq!(exponent_choices(Some(12), 0), vec![2]);
        assert_eq!((floor_log3(0), floor_log3(1), floor_log3(2), floor_log3(3), floor_log3(9)), (0, 0, 0, 1, 2));
        assert_eq!(floor_log3(26), 2);
        assert_eq!(floor_log3(27), 3);
    }
}
