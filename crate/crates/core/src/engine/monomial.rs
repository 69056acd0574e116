use std::cmp::Ordering;

use crate::error::Error;
use crate::grading::Degree;

use super::presentation::Presentation;
use super::words::Letter;

/// A PBW monomial: one exponent per generator, in generator order.
///
/// Ordered graded-lexicographically: first by the sum of absolute exponents,
/// then lexicographically on the exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<i32>,
}

impl Monomial {
    pub fn one(num_generators: usize) -> Self {
        Self { exps: vec![0; num_generators] }
    }

    pub fn from_exponents(exps: Vec<i32>) -> Self {
        Self { exps }
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn exponent(&self, gen: usize) -> i32 {
        self.exps[gen]
    }

    pub(crate) fn set_exponent(&mut self, gen: usize, e: i32) {
        self.exps[gen] = e;
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// Sum of differential exponents weighted by form degree.
    pub fn form_degree(&self, p: &Presentation) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, e)| p.generator(i).form_degree * e.unsigned_abs())
            .sum()
    }

    pub fn degree(&self, p: &Presentation) -> Degree {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| *e % 2 != 0)
            .fold(Degree::zero(p.degree_len()), |acc, (i, _)| {
                acc.add(&p.generator(i).degree).expect("uniform degree length")
            })
    }

    pub fn is_valid_for(&self, p: &Presentation) -> bool {
        self.exps.len() == p.num_generators()
            && self.exps.iter().enumerate().all(|(i, e)| {
                let g = p.generator(i);
                if g.laurent {
                    true
                } else if g.nilpotent {
                    (0..=1).contains(e)
                } else {
                    *e >= 0
                }
            })
    }

    pub fn validate(&self, p: &Presentation) -> Result<(), Error> {
        if self.is_valid_for(p) {
            Ok(())
        } else {
            Err(Error::Malformed(format!(
                "exponents {:?} are not a PBW monomial of {}",
                self.exps,
                p.name()
            )))
        }
    }

    /// The sorted word spelling this monomial.
    pub fn word(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.total_degree() as usize);
        for (g, e) in self.exps.iter().enumerate() {
            let letter = Letter { gen: g, inverse: *e < 0 };
            w.extend(std::iter::repeat_n(letter, e.unsigned_abs() as usize));
        }
        w
    }

    pub fn render(&self, p: &Presentation) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| {
                let sym = &p.generator(i).symbol;
                if *e == 1 {
                    sym.clone()
                } else {
                    format!("{sym}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every PBW monomial of `p` whose exponents satisfy the given per-generator
/// bound (`Laurent` generators range over `-bound..=bound`) and whose total
/// degree is at most `max_total`.
pub fn enumerate_monomials(p: &Presentation, bound: i32, max_total: u32) -> Vec<Monomial> {
    let n = p.num_generators();
    let ranges: Vec<(i32, i32)> = p
        .generators()
        .iter()
        .map(|g| {
            if g.laurent {
                (-bound, bound)
            } else if g.nilpotent {
                (0, 1.min(bound))
            } else {
                (0, bound)
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn go(
        i: usize,
        cur: &mut Vec<i32>,
        ranges: &[(i32, i32)],
        used: u32,
        max_total: u32,
        out: &mut Vec<Monomial>,
    ) {
        if i == cur.len() {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        let (lo, hi) = ranges[i];
        for e in lo..=hi {
            let cost = used + e.unsigned_abs();
            if cost > max_total {
                continue;
            }
            cur[i] = e;
            go(i + 1, cur, ranges, cost, max_total, out);
        }
        cur[i] = 0;
    }
    go(0, &mut cur, &ranges, 0, max_total, &mut out);
    out.sort();
    out
}
