use crate::error::{Error, Result};

/// Limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest carrier whose subsets are exhausted.
    pub subset_carrier: usize,
    /// Largest number of candidates or search nodes visited by one enumeration.
    pub enumeration: u64,
    /// Largest probe object used for universality checks of colimits.
    pub probe: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            subset_carrier: 12,
            enumeration: 1 << 22,
            probe: 3,
        }
    }
}

impl Budget {
    pub fn with_enumeration(self, enumeration: u64) -> Self {
        Budget { enumeration, ..self }
    }

    pub fn with_probe(self, probe: usize) -> Self {
        Budget { probe, ..self }
    }

    /// `base^exp` if it fits the enumeration budget.
    pub fn power(&self, what: &str, base: usize, exp: usize) -> Result<u64> {
        let mut acc: u64 = 1;
        for _ in 0..exp {
            acc = match acc.checked_mul(base as u64) {
                Some(v) if v <= self.enumeration => v,
                _ => {
                    return Err(Error::budget(
                        what,
                        format!("{}^{}", base, exp),
                        self.enumeration,
                    ))
                }
            };
        }
        if acc > self.enumeration {
            return Err(Error::budget(what, acc, self.enumeration));
        }
        Ok(acc)
    }

    pub fn check_subsets(&self, what: &str, carrier: usize) -> Result<()> {
        if carrier > self.subset_carrier || carrier >= 63 {
            return Err(Error::budget(
                what,
                format!("2^{}", carrier),
                self.subset_carrier as u64,
            ));
        }
        Ok(())
    }
}

/// Counts search nodes against a budget.
#[derive(Debug)]
pub struct Meter {
    what: &'static str,
    used: u64,
    limit: u64,
}

impl Meter {
    pub fn new(what: &'static str, budget: &Budget) -> Self {
        Meter { what, used: 0, limit: budget.enumeration }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::budget(self.what, format!("more than {}", self.limit), self.limit));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Decodes `index` as a mixed-radix digit vector with uniform `base`.
pub fn decode(mut index: u64, base: usize, len: usize, out: &mut Vec<usize>) {
    out.clear();
    for _ in 0..len {
        out.push((index % base as u64) as usize);
        index /= base as u64;
    }
}

/// All functions `{0..src} -> {0..tgt}` in lexicographic order of the image
/// vector, last coordinate fastest.
pub struct Functions {
    src: usize,
    tgt: usize,
    current: Option<Vec<usize>>,
}

pub fn functions(src: usize, tgt: usize) -> Functions {
    let current = if src > 0 && tgt == 0 { None } else { Some(vec![0; src]) };
    Functions { src, tgt, current }
}

impl Iterator for Functions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = self.src;
        while i > 0 {
            i -= 1;
            next[i] += 1;
            if next[i] < self.tgt {
                self.current = Some(next);
                return Some(out);
            }
            next[i] = 0;
        }
        Some(out)
    }
}
