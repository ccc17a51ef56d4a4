//! Dense linear algebra over GF(2) for systems of size at most 32.

/// Finds one `y` with `sum_i y_i * columns[i] = rhs`, or `None` when `rhs` is
/// outside the column span. Free variables are set to zero.
pub(crate) fn solve(columns: &[u32], rhs: u32) -> Option<u32> {
    let width = columns.len();
    let height = 32;
    // row r: coefficient bits over the unknowns, plus the rhs bit at position `width`
    let mut rows: Vec<u64> = (0..height)
        .map(|r| {
            let mut row = 0u64;
            for (i, col) in columns.iter().enumerate() {
                row |= (((col >> r) & 1) as u64) << i;
            }
            row | ((((rhs >> r) & 1) as u64) << width)
        })
        .collect();

    let mut pivots = Vec::with_capacity(width);
    let mut rank = 0;
    for var in 0..width {
        let Some(p) = (rank..height).find(|&r| (rows[r] >> var) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && (*row >> var) & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push(var);
        rank += 1;
    }
    // 0 = 1 rows mean no solution
    if rows[rank..].iter().any(|row| (row >> width) & 1 == 1) {
        return None;
    }
    let mut y = 0u32;
    for (r, &var) in pivots.iter().enumerate() {
        if (rows[r] >> width) & 1 == 1 {
            y |= 1 << var;
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        assert_eq!(solve(&[1, 2, 4], 0b101), Some(0b101));
    }

    #[test]
    fn inconsistent_system() {
        // both columns equal: span is {0, 0b11}
        assert_eq!(solve(&[0b11, 0b11], 0b01), None);
        let y = solve(&[0b11, 0b11], 0b11).unwrap();
        assert!(y == 0b01 || y == 0b10);
    }
}
