use std::cmp::Ordering;

/// Monomial orders on exponent vectors. Variable 0 is the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    /// Block order: the first `first` variables are compared by grevlex and
    /// dominate; ties are broken by grevlex on the remaining variables.
    /// An elimination order for the first block.
    Block { first: usize },
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::GrevLex
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => grevlex(a, b),
            TermOrder::Block { first } => {
                let k = first.min(a.len());
                match grevlex(&a[..k], &b[..k]) {
                    Ordering::Equal => grevlex(&a[k..], &b[k..]),
                    o => o,
                }
            }
        }
    }
}
