//! Exact Bernoulli numbers with a process-wide memo table and an on-disk
//! cache (`j <TAB> numerator/denominator` per line, in decimal).
//!
//! Convention: `B_1 = -1/2`, the sign produced by the Volkenborn integral of
//! `t`. The table is extended by the defining recurrence
//! `B_m = -(1/(m+1)) * sum_{k<m} C(m+1, k) B_k`,
//! which yields exactly that convention. Reads are concurrent; extension
//! takes the write lock, so the table only ever grows.

use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::RwLock;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::rational::{binomial, Rat};
use crate::Error;

static TABLE: Lazy<RwLock<Vec<Rat>>> = Lazy::new(|| RwLock::new(vec![Rat::one()]));

/// The `j`-th Bernoulli number, memoized.
pub fn bernoulli(j: u64) -> Rat {
    {
        let table = TABLE.read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(j as usize) {
            return b.clone();
        }
    }
    let mut table = TABLE.write().expect("bernoulli table poisoned");
    extend_to(&mut table, j);
    table[j as usize].clone()
}

/// Make sure the memo table covers `0..=j_max`.
pub fn ensure(j_max: u64) {
    let mut table = TABLE.write().expect("bernoulli table poisoned");
    extend_to(&mut table, j_max);
}

/// Number of entries currently memoized.
pub fn cached_len() -> u64 {
    TABLE.read().expect("bernoulli table poisoned").len() as u64
}

fn extend_to(table: &mut Vec<Rat>, j: u64) {
    while (table.len() as u64) <= j {
        let m = table.len() as u64;
        let mut sum = Rat::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                sum += Rat::from_integer(binomial(m + 1, k as u64)) * b;
            }
        }
        let b_m = -sum / Rat::from_integer(crate::rational::int(m as i64 + 1));
        table.push(b_m);
    }
}

/// Write the whole memo table to `path`, atomically (temp file + rename).
///
/// Returns the number of entries written.
pub fn save_cache(path: &Path) -> Result<usize, Error> {
    let snapshot: Vec<Rat> = TABLE.read().expect("bernoulli table poisoned").clone();
    let tmp = path.with_extension("tmp");
    {
        let mut out = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        for (j, b) in snapshot.iter().enumerate() {
            writeln!(out, "{j}\t{}/{}", b.numer(), b.denom())?;
        }
        out.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(snapshot.len())
}

/// Load a cache file, merging it into the memo table.
///
/// Lines must carry consecutive indices starting at 0. Entries that overlap
/// the in-memory table must agree exactly; entries beyond it are adopted.
/// Returns the number of lines read.
pub fn load_cache(path: &Path) -> Result<usize, Error> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut entries: Vec<Rat> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (j_str, val_str) = line
            .split_once('\t')
            .ok_or_else(|| Error::CacheParse(format!("line {}: missing tab", lineno + 1)))?;
        let j: usize = j_str
            .trim()
            .parse()
            .map_err(|_| Error::CacheParse(format!("line {}: bad index {j_str:?}", lineno + 1)))?;
        if j != entries.len() {
            return Err(Error::CacheParse(format!(
                "line {}: expected index {}, found {j}",
                lineno + 1,
                entries.len()
            )));
        }
        let value: Rat = val_str
            .trim()
            .parse()
            .map_err(|e| Error::CacheParse(format!("line {}: {e}", lineno + 1)))?;
        entries.push(value);
    }
    let mut table = TABLE.write().expect("bernoulli table poisoned");
    for (j, value) in entries.iter().enumerate() {
        match table.get(j) {
            Some(known) if known != value => {
                return Err(Error::CacheParse(format!(
                    "index {j}: cached value disagrees with computed value"
                )));
            }
            Some(_) => {}
            None => table.push(value.clone()),
        }
    }
    Ok(entries.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat, vp, Valuation};

    #[test]
    fn classical_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(4), frac(-1, 30));
        assert_eq!(bernoulli(6), frac(1, 42));
        assert_eq!(bernoulli(12), frac(-691, 2730));
        for j in [3u64, 5, 7, 9, 11, 13] {
            assert!(bernoulli(j).is_zero(), "B_{j} should vanish");
        }
    }

    #[test]
    fn denominators_follow_von_staudt_clausen() {
        // den(B_2m) is the product of primes p with (p-1) | 2m; in particular
        // the 2-adic valuation of every Bernoulli number is >= -1.
        for m in (2..=60u64).step_by(2) {
            let b = bernoulli(m);
            let expected: crate::Int = crate::primes::sieve(m + 1)
                .into_iter()
                .filter(|&p| m % (p - 1) == 0)
                .map(crate::Int::from)
                .product();
            assert_eq!(b.denom().clone(), expected, "m = {m}");
        }
        for j in 0..=80u64 {
            let b = bernoulli(j);
            if !b.is_zero() {
                assert!(vp(&b, 2).unwrap() >= Valuation::Finite(-1), "j = {j}");
            }
        }
    }

    #[test]
    fn cache_round_trip_and_validation() {
        ensure(20);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bernoulli.tsv");
        let written = save_cache(&path).unwrap();
        assert!(written >= 21);
        let read = load_cache(&path).unwrap();
        assert_eq!(read, written);

        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("0\t1/1\n1\t-1/2\n2\t1/6\n"));

        std::fs::write(&path, "0\t1/1\n1\t-1/3\n").unwrap();
        assert!(matches!(load_cache(&path), Err(Error::CacheParse(_))));

        std::fs::write(&path, "0\t1/1\n2\t1/6\n").unwrap();
        assert!(matches!(load_cache(&path), Err(Error::CacheParse(_))));
    }
}
