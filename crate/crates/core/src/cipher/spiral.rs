//! Spiral swapping between the LL quadrant and the three detail quadrants.
//!
//! LL cells are visited in an outward rectangular spiral that starts at
//! 1-based `(n/2, n/2 + 1)` and moves left 1, down 1, right 2, up 2, left 3,
//! down 3, ... ; cells outside the quadrant are skipped until every LL cell has
//! been visited once. Visit `i` swaps with the next unused cell of band
//! `[LH, HL, HH][i % 3]`.
//!
//! Partner scans use stride 3 from fixed anchors (1-based):
//!
//! | band | anchor     | stride     | row sweep       |
//! |------|------------|------------|-----------------|
//! | LH   | `(1, n)`   | col `-3`   | rows `1, 2, ..` |
//! | HL   | `(n, 2)`   | col `+3`   | rows `n, n-1, ..` |
//! | HH   | `(1, 3)`   | col `+3`   | rows `1, 2, ..` |
//!
//! When the stride runs off a row the scan restarts at the anchor column of
//! the next row. After the last row the anchor column shifts by one step in
//! the stride direction (staying inside the first stride window) and the row
//! sweep repeats; three passes cover every cell exactly once. Every swap
//! touches two cells no other swap touches, so replaying a record undoes it.

use crate::error::CipherError;
use crate::scalar::Real;
use crate::wavelet::SubBands;

/// Smallest quadrant side the traversal is defined for.
pub const MIN_SIDE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetailBand {
    Lh,
    Hl,
    Hh,
}

impl DetailBand {
    const CYCLE: [DetailBand; 3] = [DetailBand::Lh, DetailBand::Hl, DetailBand::Hh];
}

/// One exchange; positions are 0-based `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Swap {
    pub band: DetailBand,
    pub ll: (usize, usize),
    pub partner: (usize, usize),
}

impl Swap {
    /// Positions as 1-based `(row, col)` pairs.
    pub fn one_based(&self) -> ((usize, usize), (usize, usize)) {
        ((self.ll.0 + 1, self.ll.1 + 1), (self.partner.0 + 1, self.partner.1 + 1))
    }
}

/// Ordered list of executed swaps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwapRecord {
    pub swaps: Vec<Swap>,
}

impl SwapRecord {
    /// Replays the swaps in order on `sb`.
    pub fn apply<T: Real>(&self, sb: &mut SubBands<T>) {
        for s in &self.swaps {
            let partner = match s.band {
                DetailBand::Lh => &mut sb.lh,
                DetailBand::Hl => &mut sb.hl,
                DetailBand::Hh => &mut sb.hh,
            };
            std::mem::swap(&mut sb.ll[s.ll], &mut partner[s.partner]);
        }
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }
}

fn check_side(n: usize) -> Result<(), CipherError> {
    if n < MIN_SIDE || !n.is_multiple_of(2) {
        return Err(CipherError::Dimension(format!(
            "spiral swapping needs an even quadrant side >= {MIN_SIDE}, got {n}"
        )));
    }
    Ok(())
}

/// LL visiting order for an `n x n` quadrant, 0-based.
pub fn spiral_order(n: usize) -> Result<Vec<(usize, usize)>, CipherError> {
    check_side(n)?;
    let total = n * n;
    let mut out = Vec::with_capacity(total);
    let (mut r, mut c) = ((n / 2 - 1) as isize, (n / 2) as isize);
    let inside = |r: isize, c: isize| r >= 0 && c >= 0 && (r as usize) < n && (c as usize) < n;
    out.push((r as usize, c as usize));
    // left, down, right, up
    const DIRS: [(isize, isize); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];
    let mut run = 1;
    let mut d = 0;
    while out.len() < total {
        for _ in 0..2 {
            let (dr, dc) = DIRS[d % 4];
            for _ in 0..run {
                r += dr;
                c += dc;
                if inside(r, c) {
                    out.push((r as usize, c as usize));
                }
            }
            d += 1;
        }
        run += 1;
    }
    Ok(out)
}

/// Stride-3 partner scan for `band`, 0-based, covering all `n^2` cells.
pub fn partner_scan(band: DetailBand, n: usize) -> Result<Vec<(usize, usize)>, CipherError> {
    check_side(n)?;
    let rows: Vec<usize> = match band {
        DetailBand::Hl => (0..n).rev().collect(),
        DetailBand::Lh | DetailBand::Hh => (0..n).collect(),
    };
    let mut out = Vec::with_capacity(n * n);
    for pass in 0..3 {
        for &r in &rows {
            match band {
                DetailBand::Lh => {
                    // 1-based n, n-1, n-2 as 0-based starts
                    let start = n - 1 - pass;
                    out.extend((0..=start).rev().step_by(3).map(|c| (r, c)));
                }
                DetailBand::Hl | DetailBand::Hh => {
                    // 1-based anchor 2 (HL) or 3 (HH), shifted by pass, folded into 1..=3
                    let anchor = if band == DetailBand::Hl { 2 } else { 3 };
                    let start = (anchor - 1 + pass) % 3;
                    out.extend((start..n).step_by(3).map(|c| (r, c)));
                }
            }
        }
    }
    debug_assert_eq!(out.len(), n * n);
    Ok(out)
}

/// Swap plan for quadrants of side `n`; independent of the band contents.
pub fn swap_plan(n: usize) -> Result<SwapRecord, CipherError> {
    let visits = spiral_order(n)?;
    let mut iters = Vec::with_capacity(3);
    for b in DetailBand::CYCLE {
        iters.push(partner_scan(b, n)?.into_iter());
    }
    let swaps = visits
        .into_iter()
        .enumerate()
        .map(|(i, ll)| {
            let k = i % 3;
            let partner = iters[k].next().expect("each scan covers the whole band");
            Swap { band: DetailBand::CYCLE[k], ll, partner }
        })
        .collect();
    Ok(SwapRecord { swaps })
}

/// Applies the spiral swap to a copy of `sb` and returns it with the record.
pub fn spiral_swap<T: Real>(sb: &SubBands<T>) -> Result<(SubBands<T>, SwapRecord), CipherError> {
    let n = sb.side();
    for q in [&sb.lh, &sb.hl, &sb.hh, &sb.ll] {
        if q.rows() != n || q.cols() != n {
            return Err(CipherError::Dimension("quadrants must be square and equal in size".into()));
        }
    }
    let record = swap_plan(n)?;
    let mut out = sb.clone();
    record.apply(&mut out);
    Ok((out, record))
}
