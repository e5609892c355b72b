use crate::error::{Error, Result};
use crate::relation::Domain;

/// Deterministic transducer with one output letter per state:
/// `T(ε) = out(q0)` and `T(wa) = T(w) · out(δ(q0, wa))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreTransducer {
    input: Domain,
    output: Domain,
    initial: usize,
    delta: Vec<usize>,
    outputs: Vec<usize>,
}

impl MooreTransducer {
    pub fn new(
        input: Domain,
        output: Domain,
        initial: usize,
        delta: impl IntoIterator<Item = (usize, usize, usize)>,
        outputs: Vec<usize>,
    ) -> Result<Self> {
        let states = outputs.len();
        let k = input.len();
        if input.is_empty() || output.is_empty() {
            return Err(Error::InvalidInstance("transducer alphabets must be non-empty".into()));
        }
        if initial >= states {
            return Err(Error::InvalidInstance(format!("initial state {initial} out of range")));
        }
        if let Some(o) = outputs.iter().find(|&&o| o >= output.len()) {
            return Err(Error::InvalidInstance(format!("output letter {o} out of range")));
        }
        let mut table = vec![usize::MAX; states * k];
        for (p, a, q) in delta {
            if p >= states || q >= states || a >= k {
                return Err(Error::InvalidInstance(format!("transition ({p},{a},{q}) out of range")));
            }
            if table[p * k + a] != usize::MAX && table[p * k + a] != q {
                return Err(Error::InvalidInstance(format!("state {p} has two successors on `{}`", input.symbol(a))));
            }
            table[p * k + a] = q;
        }
        if let Some(slot) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidInstance(format!(
                "transition function is not total: state {} on `{}`",
                slot / k,
                input.symbol(slot % k)
            )));
        }
        Ok(MooreTransducer { input, output, initial, delta: table, outputs })
    }

    /// Echoes its input; `input` and `output` must list the same symbols.
    pub fn identity(input: Domain, output: Domain) -> Result<Self> {
        if input.symbols() != output.symbols() {
            return Err(Error::DomainMismatch { expected: input.to_string(), found: output.to_string() });
        }
        let n = input.len();
        let delta: Vec<_> = (0..n).flat_map(|p| (0..n).map(move |a| (p, a, a))).collect();
        Self::new(input, output, 0, delta, (0..n).collect())
    }

    pub fn constant(input: Domain, output: Domain, letter: usize) -> Result<Self> {
        let delta: Vec<_> = (0..input.len()).map(|a| (0, a, 0)).collect();
        Self::new(input, output, 0, delta, vec![letter])
    }

    pub fn input(&self) -> &Domain {
        &self.input
    }

    pub fn output(&self) -> &Domain {
        &self.output
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.input.len() + a]
    }

    pub fn out(&self, q: usize) -> usize {
        self.outputs[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.input.len();
        self.delta.iter().enumerate().map(move |(slot, &q)| (slot / k, slot % k, q))
    }

    /// `T(w)`, of length `|w| + 1`.
    pub fn transduce(&self, w: &[usize]) -> Vec<usize> {
        let mut q = self.initial;
        let mut out = Vec::with_capacity(w.len() + 1);
        out.push(self.outputs[q]);
        for &a in w {
            q = self.step(q, a);
            out.push(self.outputs[q]);
        }
        out
    }

    /// The letter-per-letter function on non-empty prefixes: `T(w)` without
    /// its first letter.
    pub fn apply(&self, w: &[usize]) -> Vec<usize> {
        self.transduce(w).split_off(1)
    }

    pub fn apply_labels<S: AsRef<str>>(&self, w: &[S]) -> Result<Vec<String>> {
        let idx = w.iter().map(|s| self.input.index(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(self.apply(&idx).into_iter().map(|o| self.output.symbol(o).to_string()).collect())
    }
}
