//! Segmented lattice-hit sieve for representation counts.
//!
//! For n ≥ 1 the map (x, y) ↦ rotations by 90° is a bijection between the
//! quadrant {x ≥ 1, y ≥ 0} and Z² \ {0}, so r₂(n) = 4 · #{x ≥ 1, y ≥ 0 :
//! x² + y² = n}. A segment [lo, hi) is filled by walking x and the admissible
//! y-range, at cost O(√hi + hits).

use crate::error::{Error, Result};

/// Largest span a single in-memory table may cover.
pub const MAX_TABLE_SPAN: u64 = 200_000_000;
const SEGMENT: u64 = 1 << 16;

#[inline]
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// Smallest y ≥ 0 with y² ≥ n.
#[inline]
fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Adds quarter counts r₂(n)/4 for n in [lo, lo + out.len()) into `out`.
/// The entry for n = 0 is left at zero; callers special-case r₂(0) = 1.
pub fn fill_quarter_counts(lo: u64, out: &mut [u16]) {
    let hi = lo + out.len() as u64;
    if hi <= 1 {
        return;
    }
    let mut x: u64 = 1;
    while x * x < hi {
        let x2 = x * x;
        let mut y = if lo > x2 { ceil_sqrt(lo - x2) } else { 0 };
        loop {
            let n = x2 + y * y;
            if n >= hi {
                break;
            }
            out[(n - lo) as usize] += 1;
            y += 1;
        }
        x += 1;
    }
}

/// r₂ over a contiguous integer range, stored as quarter counts.
#[derive(Debug, Clone)]
pub struct R2Table {
    start: u64,
    quarter: Vec<u16>,
}

impl R2Table {
    /// Table covering the integers in [start, end] inclusive.
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if end < start {
            return Ok(Self {
                start,
                quarter: Vec::new(),
            });
        }
        let span = end - start + 1;
        if span > MAX_TABLE_SPAN {
            return Err(Error::Capacity {
                what: "r2 table span",
                requested: span as f64,
                limit: MAX_TABLE_SPAN as f64,
            });
        }
        let mut quarter = vec![0u16; span as usize];
        for (i, chunk) in quarter.chunks_mut(SEGMENT as usize).enumerate() {
            fill_quarter_counts(start + i as u64 * SEGMENT, chunk);
        }
        Ok(Self { start, quarter })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// Last covered integer (inclusive); `None` for an empty table.
    pub fn end(&self) -> Option<u64> {
        (!self.quarter.is_empty()).then(|| self.start + self.quarter.len() as u64 - 1)
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.start && n - self.start < self.quarter.len() as u64
    }

    /// r₂(n); panics when n is outside the table.
    #[inline]
    pub fn r2(&self, n: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        4 * self.quarter[(n - self.start) as usize] as u64
    }

    /// (n, r₂(n)) for the representable n in the table, ascending.
    pub fn shells(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.shells_between(self.start, u64::MAX)
    }

    /// (n, r₂(n)) for the representable n in [lo, hi] ∩ table, ascending.
    pub fn shells_between(&self, lo: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let end = self.start + self.quarter.len() as u64;
        (lo.max(self.start)..hi.saturating_add(1).min(end))
            .map(move |n| (n, self.r2(n)))
            .filter(|&(_, r)| r > 0)
    }
}

/// Streaming (n, r₂(n)) over [lo, hi] for representable n, one segment in
/// memory at a time.
pub struct ShellStream {
    next: u64,
    hi: u64,
    buf: Vec<u16>,
    buf_start: u64,
    pos: usize,
}

impl ShellStream {
    pub fn new(lo: u64, hi: u64) -> Self {
        Self {
            next: lo,
            hi,
            buf: Vec::new(),
            buf_start: lo,
            pos: 0,
        }
    }

    fn refill(&mut self) -> bool {
        if self.next > self.hi {
            return false;
        }
        let end = (self.next + SEGMENT - 1).min(self.hi);
        self.buf.clear();
        self.buf.resize((end - self.next + 1) as usize, 0);
        fill_quarter_counts(self.next, &mut self.buf);
        self.buf_start = self.next;
        self.pos = 0;
        self.next = end + 1;
        true
    }
}

impl Iterator for ShellStream {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        loop {
            while self.pos < self.buf.len() {
                let n = self.buf_start + self.pos as u64;
                let q = self.buf[self.pos] as u64;
                self.pos += 1;
                if n == 0 {
                    return Some((0, 1));
                }
                if q > 0 {
                    return Some((n, 4 * q));
                }
            }
            if !self.refill() {
                return None;
            }
        }
    }
}

/// Number of lattice points in the closed disk x² + y² ≤ u, i.e.
/// Σ_{n ≤ u} r₂(n). O(√u).
pub fn disk_count(u: f64) -> u64 {
    if u < 0.0 {
        return 0;
    }
    let u = u.floor() as u64;
    let r = isqrt(u);
    let mut acc = 1 + 4 * r;
    for x in 1..=r {
        acc += 4 * isqrt(u - x * x);
    }
    acc
}
