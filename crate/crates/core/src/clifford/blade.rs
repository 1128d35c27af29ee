use std::cmp::Ordering;
use std::fmt;

/// Basis monomial `e_{i1} e_{i2} ⋯` with ascending indices, stored as a
/// bitmask (bit `k` is generator `k + 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Generator with zero-based index `k`.
    pub fn generator(k: usize) -> Blade {
        Blade(1 << k)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_odd(self) -> bool {
        self.grade() % 2 == 1
    }

    /// Zero-based generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |k| m >> k & 1 == 1)
    }

    /// Sign `(−1)^{k(k−1)/2}` picked up by reversing the generator order.
    pub fn reversal_negates(self) -> bool {
        (self.grade() / 2) % 2 == 1
    }
}

/// Product of two blades: the resulting blade and whether the product is
/// negated. The sign counts transpositions needed to sort the
/// concatenated index sequences, plus one for every shared generator in
/// `neg_square` (generators squaring to −1).
pub fn blade_product(a: Blade, b: Blade, neg_square: u32) -> (Blade, bool) {
    let mut swaps = 0u32;
    let mut x = a.0 >> 1;
    while x != 0 {
        swaps += (x & b.0).count_ones();
        x >>= 1;
    }
    swaps += (a.0 & b.0 & neg_square).count_ones();
    (Blade(a.0 ^ b.0), swaps % 2 == 1)
}

impl Ord for Blade {
    /// Grade first, then lexicographic on the ascending index sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        // Within a grade, the blade owning the lowest differing generator
        // comes first.
        self.grade().cmp(&other.grade()).then_with(|| {
            let d = self.0 ^ other.0;
            if d == 0 {
                Ordering::Equal
            } else if self.0 & d & d.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for k in self.indices() {
            write!(f, "e{}", k + 1)?;
        }
        Ok(())
    }
}
