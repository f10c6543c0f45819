//! Explicit permutations on `{0, .., n-1}` and exhaustive enumeration of
//! set and block-system stabilizers.
//!
//! This is the ground-truth path: it never consults the cycle-type calculus
//! of [`crate::partition`] except to read off the type of a concrete
//! permutation. It is only meant for small degrees.

use crate::component::Component;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest degree accepted by the exhaustive routines.
pub const ORACLE_MAX_DEGREE: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: u32) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::Domain("images do not form a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Product of the given disjoint or overlapping cycles, applied right to left.
    pub fn from_cycles(n: u32, cycles: &[&[u32]]) -> Result<Self> {
        let mut perm = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            let mut c = Perm::identity(n);
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(Error::Domain(format!("point out of range for degree {n}")));
                }
                c.images[a as usize] = b;
            }
            perm = perm.then(&c);
        }
        Perm::from_images(perm.images)
    }

    /// A permutation of the given type whose cycles occupy consecutive points,
    /// starting at `offset`, in the order the parts are listed.
    pub fn with_cycle_lengths(n: u32, offset: u32, lengths: &[u32]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n).collect();
        let mut start = offset;
        for &len in lengths {
            if start + len > n {
                return Err(Error::Domain("cycle lengths exceed the degree".into()));
            }
            for k in 0..len {
                images[(start + k) as usize] = start + (k + 1) % len;
            }
            start += len;
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `g^-1 self g`, the relabeling of `self` by `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..e {
            out = out.then(self);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<u32> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts(&self.cycle_lengths()).expect("nonempty permutation")
    }

    /// Order, computed by repeated multiplication.
    pub fn order(&self) -> u64 {
        let id = Perm::identity(self.degree());
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.then(self);
            k += 1;
        }
        k
    }

    /// Sign by counting inversions.
    pub fn is_even(&self) -> bool {
        let v = &self.images;
        let mut inversions = 0usize;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Whether the set given as a bitmask is mapped onto itself.
    pub fn stabilizes_set(&self, mask: u64) -> bool {
        (0..self.degree()).all(|i| {
            let inside = mask >> i & 1 == 1;
            !inside || mask >> self.apply(i) & 1 == 1
        })
    }

    /// Whether the block system (`block_of[i]` is the block of point `i`)
    /// is mapped onto itself.
    pub fn preserves_blocks(&self, block_of: &[u32]) -> bool {
        let blocks = block_of.iter().max().map_or(0, |&b| b as usize + 1);
        let mut image_block = vec![u32::MAX; blocks];
        for i in 0..self.degree() {
            let from = block_of[i as usize] as usize;
            let to = block_of[self.apply(i) as usize];
            if image_block[from] == u32::MAX {
                image_block[from] = to;
            } else if image_block[from] != to {
                return false;
            }
        }
        true
    }
}

/// Calls `f` on every `k`-subset of `{0..n}` given as a bitmask; stops early
/// and returns true as soon as `f` does.
pub fn any_subset(n: u32, k: u32, mut f: impl FnMut(u64) -> bool) -> bool {
    fn rec(start: u32, n: u32, left: u32, mask: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return f(mask);
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            if rec(i + 1, n, left - 1, mask | 1 << i, f) {
                return true;
            }
        }
        false
    }
    rec(0, n, k, 0, &mut f)
}

/// Calls `f` on every partition of `{0..n}` into blocks of size `b`
/// (as a point-to-block map); stops early when `f` returns true.
pub fn any_block_system(n: u32, b: u32, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    fn rec(
        n: u32,
        b: u32,
        block_of: &mut Vec<u32>,
        next_block: u32,
        f: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let Some(first) = block_of.iter().position(|&x| x == u32::MAX) else {
            return f(block_of);
        };
        block_of[first] = next_block;
        let free: Vec<u32> = (first as u32 + 1..n)
            .filter(|&i| block_of[i as usize] == u32::MAX)
            .collect();
        let found = choose(&free, b - 1, 0, block_of, next_block, &mut |bo| {
            rec(n, b, bo, next_block + 1, f)
        });
        block_of[first] = u32::MAX;
        found
    }
    fn choose(
        free: &[u32],
        left: u32,
        start: usize,
        block_of: &mut Vec<u32>,
        block: u32,
        k: &mut dyn FnMut(&mut Vec<u32>) -> bool,
    ) -> bool {
        if left == 0 {
            return k(block_of);
        }
        for idx in start..free.len() {
            if free.len() - idx < left as usize {
                break;
            }
            block_of[free[idx] as usize] = block;
            let found = choose(free, left - 1, idx + 1, block_of, block, k);
            block_of[free[idx] as usize] = u32::MAX;
            if found {
                return true;
            }
        }
        false
    }
    if b == 0 || n % b != 0 {
        return false;
    }
    let mut block_of = vec![u32::MAX; n as usize];
    rec(n, b, &mut block_of, 0, &mut f)
}

/// All maps `x -> a x + b (mod p)` with `a != 0`.
pub fn affine_maps(p: u32) -> Vec<Perm> {
    let mut out = Vec::new();
    for a in 1..p {
        for b in 0..p {
            let images = (0..p).map(|x| (a * x + b) % p).collect();
            out.push(Perm { images });
        }
    }
    out
}

/// Whether some conjugate of `component` contains every generator, decided
/// by exhaustive enumeration. Affine components accept a single generator
/// only (conjugacy in `S_p` is decided by the cycle type).
pub fn explicit_containment(gens: &[Perm], component: &Component) -> Result<bool> {
    let n = gens.first().map_or(0, |g| g.degree());
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::Resource(format!(
            "explicit enumeration is limited to degree {ORACLE_MAX_DEGREE}, got {n}"
        )));
    }
    if gens.iter().any(|g| g.degree() != n) {
        return Err(Error::Domain("generators of mixed degree".into()));
    }
    match *component {
        Component::Intransitive { x } => Ok(any_subset(n, x, |mask| {
            gens.iter().all(|g| g.stabilizes_set(mask))
        })),
        Component::Imprimitive { b, m } => {
            if b * m != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: b * m,
                });
            }
            Ok(any_block_system(n, b, |blocks| {
                gens.iter().all(|g| g.preserves_blocks(blocks))
            }))
        }
        Component::Alternating => Ok(gens.iter().all(Perm::is_even)),
        Component::Affine { p } => {
            let [g] = gens else {
                return Err(Error::Domain(
                    "affine oracle accepts a single generator".into(),
                ));
            };
            let want = g.cycle_type();
            Ok(affine_maps(p).iter().any(|a| a.cycle_type() == want))
        }
        _ => Err(Error::Undecidable {
            component: component.to_string(),
            ty: "explicit generators".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_system_counts() {
        let count = |n, b| {
            let mut c = 0u64;
            any_block_system(n, b, |_| {
                c += 1;
                false
            });
            c
        };
        // n! / (b!^m m!)
        assert_eq!(count(4, 2), 3);
        assert_eq!(count(6, 2), 15);
        assert_eq!(count(6, 3), 10);
        assert_eq!(count(8, 4), 35);
        assert_eq!(count(9, 3), 280);
    }

    #[test]
    fn subset_counts() {
        let mut c = 0;
        any_subset(7, 3, |_| {
            c += 1;
            false
        });
        assert_eq!(c, 35);
    }

    #[test]
    fn cycles_and_signs() {
        let p = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.cycle_type(), Partition::from_parts(&[2, 3]).unwrap());
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
        assert!(p.pow(2).is_even());
        assert_eq!(affine_maps(5).len(), 20);
    }
}
