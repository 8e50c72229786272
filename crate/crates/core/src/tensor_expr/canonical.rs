//! Canonical form of a contraction monomial.
//!
//! The canonical representative is the lexicographically maximal word over
//! all rewritings of the monomial under three commuting families of moves:
//!
//! * permutation of the (commuting) curvature factors,
//! * the eight sign symmetries of each factor's base slots (swap of the
//!   first pair, swap of the second pair, exchange of the two pairs),
//! * swap of the two free-pair slots,
//!
//! with contraction labels renamed by first occurrence after each move.
//! Derivative slots are ordered and carry no symmetry. The search is an
//! ordered backtracking scan with per-slot pruning against the current best
//! word. If the maximal word is reached with both signs, the monomial is
//! identically zero (e.g. `R[a,a,b,b]`).

use super::monomial::{CurvatureFactor, Label, Monomial, TensorError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalForm {
    /// Forced to zero by the sign symmetries alone.
    Zero,
    /// `original = sign * key` as tensor expressions.
    Canonical { key: Monomial, sign: i8 },
}

impl CanonicalForm {
    pub fn into_parts(self) -> Option<(Monomial, i8)> {
        match self {
            CanonicalForm::Zero => None,
            CanonicalForm::Canonical { key, sign } => Some((key, sign)),
        }
    }
}

/// Applies one of the eight base-slot symmetries. Bit 0: pair exchange,
/// bit 1: swap slots (1,2), bit 2: swap slots (3,4).
fn arrange(base: &[Label; 4], code: u8) -> ([Label; 4], i8) {
    let mut b = *base;
    if code & 1 != 0 {
        b = [b[2], b[3], b[0], b[1]];
    }
    let mut sign = 1i8;
    if code & 2 != 0 {
        b.swap(0, 1);
        sign = -sign;
    }
    if code & 4 != 0 {
        b.swap(2, 3);
        sign = -sign;
    }
    (b, sign)
}

const SHAPE_BASE: u8 = 200;
const S2_MARK: u8 = 250;
const UNSET: u8 = u8::MAX;

struct WordBuilder<'a> {
    best: Option<&'a [u8]>,
    word: Vec<u8>,
    relabel: [u8; 256],
    touched: Vec<u8>,
    next_label: u8,
    ahead: bool,
}

impl<'a> WordBuilder<'a> {
    fn new(best: Option<&'a [u8]>, capacity: usize) -> Self {
        WordBuilder {
            best,
            word: Vec::with_capacity(capacity),
            relabel: [UNSET; 256],
            touched: Vec::with_capacity(capacity),
            next_label: 0,
            ahead: false,
        }
    }

    /// Pushes a byte; returns false when the candidate is strictly worse.
    fn push(&mut self, byte: u8) -> bool {
        if !self.ahead {
            if let Some(best) = self.best {
                let b = best[self.word.len()];
                if byte < b {
                    return false;
                }
                if byte > b {
                    self.ahead = true;
                }
            } else {
                self.ahead = true;
            }
        }
        self.word.push(byte);
        true
    }

    fn push_label(&mut self, l: Label) -> bool {
        let slot = l.0 as usize;
        if self.relabel[slot] == UNSET {
            self.relabel[slot] = self.next_label;
            self.touched.push(l.0);
            self.next_label += 1;
        }
        let b = self.relabel[slot];
        self.push(b)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Rebuilds the monomial for a winning candidate.
fn realize(m: &Monomial, perm: &[usize], arrs: &[u8], swap_s2: bool) -> Monomial {
    let mut relabel = [UNSET; 256];
    let mut next = 0u8;
    let get = move |l: Label, relabel: &mut [u8; 256], next: &mut u8| {
        if relabel[l.0 as usize] == UNSET {
            relabel[l.0 as usize] = *next;
            *next += 1;
        }
        Label(relabel[l.0 as usize])
    };
    let mut factors = Vec::with_capacity(m.factors.len());
    for (pos, &fi) in perm.iter().enumerate() {
        let f = &m.factors[fi];
        let (base, _) = arrange(&f.base, arrs[pos]);
        let base = [
            get(base[0], &mut relabel, &mut next),
            get(base[1], &mut relabel, &mut next),
            get(base[2], &mut relabel, &mut next),
            get(base[3], &mut relabel, &mut next),
        ];
        let derivs = f
            .derivs
            .iter()
            .map(|&l| get(l, &mut relabel, &mut next))
            .collect();
        factors.push(CurvatureFactor { base, derivs });
    }
    let sym2 = m.sym2.map(|(u, v)| {
        let (u, v) = if swap_s2 { (v, u) } else { (u, v) };
        (
            get(u, &mut relabel, &mut next),
            get(v, &mut relabel, &mut next),
        )
    });
    Monomial { factors, sym2 }
}

/// Reduces a well-formed monomial to its canonical key and relative sign.
pub fn canonicalize(m: &Monomial) -> Result<CanonicalForm, TensorError> {
    m.validate()?;

    let nf = m.factors.len();
    let word_len: usize =
        m.factors.iter().map(|f| 5 + f.derivs.len()).sum::<usize>() + if m.sym2.is_some() { 3 } else { 0 };

    let perms = permutations(nf);
    let swaps: &[bool] = if m.sym2.is_some() { &[false, true] } else { &[false] };

    let mut best_word: Option<Vec<u8>> = None;
    let mut best_candidate: Option<(Vec<usize>, Vec<u8>, bool)> = None;
    let mut seen_plus = false;
    let mut seen_minus = false;

    let mut arrs = vec![0u8; nf];
    for perm in &perms {
        // Odometer over the 8^nf per-factor arrangements.
        arrs.iter_mut().for_each(|a| *a = 0);
        loop {
            for &swap_s2 in swaps {
                let mut sign = 1i8;
                let mut builder = WordBuilder::new(best_word.as_deref(), word_len);
                let mut alive = true;
                'factors: for (pos, &fi) in perm.iter().enumerate() {
                    let f = &m.factors[fi];
                    if !builder.push(SHAPE_BASE + f.derivs.len().min(49) as u8) {
                        alive = false;
                        break 'factors;
                    }
                    let (base, s) = arrange(&f.base, arrs[pos]);
                    sign *= s;
                    for l in base {
                        if !builder.push_label(l) {
                            alive = false;
                            break 'factors;
                        }
                    }
                    for &l in &f.derivs {
                        if !builder.push_label(l) {
                            alive = false;
                            break 'factors;
                        }
                    }
                }
                if alive {
                    if let Some((u, v)) = m.sym2 {
                        let (u, v) = if swap_s2 { (v, u) } else { (u, v) };
                        alive = builder.push(S2_MARK)
                            && builder.push_label(u)
                            && builder.push_label(v);
                    }
                }
                if !alive {
                    continue;
                }
                if builder.ahead || best_word.is_none() {
                    best_word = Some(builder.word);
                    best_candidate = Some((perm.clone(), arrs.clone(), swap_s2));
                    seen_plus = sign > 0;
                    seen_minus = sign < 0;
                } else {
                    // Equal to the current best word.
                    seen_plus |= sign > 0;
                    seen_minus |= sign < 0;
                }
            }
            // Advance the odometer.
            let mut i = 0;
            loop {
                if i == nf {
                    break;
                }
                arrs[i] += 1;
                if arrs[i] < 8 {
                    break;
                }
                arrs[i] = 0;
                i += 1;
            }
            if i == nf {
                break;
            }
        }
        if nf == 0 {
            break;
        }
    }

    if seen_plus && seen_minus {
        return Ok(CanonicalForm::Zero);
    }
    let (perm, arrs, swap_s2) = best_candidate.expect("at least one candidate");
    let key = realize(m, &perm, &arrs, swap_s2);
    let sign = if seen_minus { -1 } else { 1 };
    Ok(CanonicalForm::Canonical { key, sign })
}
