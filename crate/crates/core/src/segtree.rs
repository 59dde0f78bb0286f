//! Range-add, range-minimum segment tree. Minimum queries report the leftmost
//! position attaining the minimum.

#[derive(Clone, Debug)]
pub struct MinAddTree {
    n: usize,
    size: usize,
    log: u32,
    min: Vec<i64>,
    arg: Vec<u32>,
    lazy: Vec<i64>,
}

const PAD: i64 = i64::MAX / 2;

impl MinAddTree {
    pub fn new(init: &[i64]) -> Self {
        let n = init.len().max(1);
        let size = n.next_power_of_two();
        let log = size.trailing_zeros();
        let mut min = vec![PAD; 2 * size];
        let mut arg = vec![0u32; 2 * size];
        for i in 0..size {
            arg[size + i] = i as u32;
        }
        min[size..size + init.len()].copy_from_slice(init);
        let mut t = MinAddTree { n, size, log, min, arg, lazy: vec![0; size] };
        for k in (1..size).rev() {
            t.pull(k);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn pull(&mut self, k: usize) {
        let (l, r) = (2 * k, 2 * k + 1);
        let (m, a) = if self.min[l] <= self.min[r] { (self.min[l], self.arg[l]) } else { (self.min[r], self.arg[r]) };
        self.min[k] = m + self.lazy[k];
        self.arg[k] = a;
    }

    #[inline]
    fn apply(&mut self, k: usize, delta: i64) {
        self.min[k] += delta;
        if k < self.size {
            self.lazy[k] += delta;
        }
    }

    /// Adds `delta` on positions `[l, r)`.
    pub fn add(&mut self, l: usize, r: usize, delta: i64) {
        let r = r.min(self.n);
        if l >= r || delta == 0 {
            return;
        }
        let (l0, r0) = (l + self.size, r + self.size);
        let (mut l, mut r) = (l0, r0);
        while l < r {
            if l & 1 == 1 {
                self.apply(l, delta);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                self.apply(r, delta);
            }
            l >>= 1;
            r >>= 1;
        }
        for i in 1..=self.log {
            if (l0 >> i) << i != l0 {
                self.pull(l0 >> i);
            }
            if (r0 >> i) << i != r0 {
                self.pull((r0 - 1) >> i);
            }
        }
    }

    #[inline]
    fn push(&mut self, k: usize) {
        let d = self.lazy[k];
        if d != 0 {
            self.apply(2 * k, d);
            self.apply(2 * k + 1, d);
            self.lazy[k] = 0;
        }
    }

    /// Minimum over `[l, r)` with its leftmost position; `None` when empty.
    pub fn min(&mut self, l: usize, r: usize) -> Option<(i64, usize)> {
        let r = r.min(self.n);
        if l >= r {
            return None;
        }
        let (mut l, mut r) = (l + self.size, r + self.size);
        for i in (1..=self.log).rev() {
            if (l >> i) << i != l {
                self.push(l >> i);
            }
            if (r >> i) << i != r {
                self.push((r - 1) >> i);
            }
        }
        let mut left: (i64, u32) = (i64::MAX, 0);
        let mut right: (i64, u32) = (i64::MAX, 0);
        while l < r {
            if l & 1 == 1 {
                if self.min[l] < left.0 {
                    left = (self.min[l], self.arg[l]);
                }
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                if self.min[r] <= right.0 {
                    right = (self.min[r], self.arg[r]);
                }
            }
            l >>= 1;
            r >>= 1;
        }
        let (m, a) = if left.0 <= right.0 { left } else { right };
        Some((m, a as usize))
    }

    pub fn global_min(&self) -> (i64, usize) {
        (self.min[1], self.arg[1] as usize)
    }

    pub fn get(&self, i: usize) -> i64 {
        let mut k = i + self.size;
        let mut v = self.min[k];
        while k > 1 {
            k >>= 1;
            v += self.lazy[k];
        }
        v
    }
}

/// Fenwick tree over non-negative weights with a lower-bound search.
#[derive(Clone, Debug)]
pub struct Fenwick {
    tree: Vec<i64>,
    log: usize,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        let mut log = 1;
        while (1 << log) <= n {
            log += 1;
        }
        Fenwick { tree: vec![0; n + 1], log }
    }

    pub fn add(&mut self, i: usize, delta: i64) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions `[0, i)`.
    pub fn prefix(&self, i: usize) -> i64 {
        let mut i = i.min(self.tree.len() - 1);
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }

    /// Smallest position `p` with `prefix(p + 1) >= target`, if any.
    pub fn lower_bound(&self, target: i64) -> Option<usize> {
        if target <= 0 {
            return Some(0);
        }
        let mut pos = 0;
        let mut rem = target;
        for k in (0..self.log).rev() {
            let next = pos + (1 << k);
            if next < self.tree.len() && self.tree[next] < rem {
                pos = next;
                rem -= self.tree[next];
            }
        }
        (pos < self.tree.len() - 1).then_some(pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_naive_array() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..40);
            let mut a: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..20)).collect();
            let mut t = MinAddTree::new(&a);
            for _ in 0..200 {
                let l = rng.gen_range(0..n);
                let r = rng.gen_range(l..=n);
                if rng.gen_bool(0.5) {
                    let d = rng.gen_range(-9..9);
                    t.add(l, r, d);
                    a[l..r].iter_mut().for_each(|x| *x += d);
                } else if l < r {
                    let want = (l..r).map(|i| (a[i], i)).min().unwrap();
                    assert_eq!(t.min(l, r), Some(want));
                }
                let i = rng.gen_range(0..n);
                assert_eq!(t.get(i), a[i]);
                assert_eq!(t.global_min(), (0..n).map(|i| (a[i], i)).min().unwrap());
            }
        }
    }

    #[test]
    fn fenwick_lower_bound() {
        let mut f = Fenwick::new(6);
        f.add(1, 3);
        f.add(4, 2);
        assert_eq!(f.prefix(6), 5);
        assert_eq!(f.lower_bound(1), Some(1));
        assert_eq!(f.lower_bound(3), Some(1));
        assert_eq!(f.lower_bound(4), Some(4));
        assert_eq!(f.lower_bound(6), None);
    }
}
