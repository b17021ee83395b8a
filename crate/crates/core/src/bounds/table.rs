//! Known upper bounds on minimal covering code sizes.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::pow;

const BUILTIN_HAMMING: &str = include_str!("../../data/k_table.csv");
const BUILTIN_RANK: &str = include_str!("../../data/rank_table.csv");

/// Environment variable naming a directory of extra table CSVs.
pub const TABLES_ENV: &str = "LDBOUND_TABLES";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub k_upper: BigUint,
    pub source: String,
}

/// `K_q(n, R)` upper bounds keyed by `(q, n, R)` and rank covering bounds
/// `K_R(q^m, n, rho)` keyed by `(q, m, n, rho)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KTable {
    pub hamming: BTreeMap<(u64, u64, u64), TableEntry>,
    pub rank: BTreeMap<(u64, u64, u64, u64), TableEntry>,
}

#[derive(Deserialize)]
struct HammingRow {
    q: u64,
    n: u64,
    #[serde(rename = "R")]
    r: u64,
    #[serde(rename = "K_upper")]
    k_upper: String,
    source: String,
}

#[derive(Deserialize)]
struct RankRow {
    q: u64,
    m: u64,
    n: u64,
    rho: u64,
    #[serde(rename = "K_upper")]
    k_upper: String,
    source: String,
}

fn parse_k(s: &str, line: usize) -> Result<BigUint> {
    let k: BigUint = s.trim().parse().map_err(|_| Error::Parse { line, msg: format!("bad K_upper {s:?}") })?;
    if k.is_zero() {
        return Err(Error::Parse { line, msg: "K_upper must be at least 1".into() });
    }
    Ok(k)
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    Error::Parse { line, msg: e.to_string() }
}

impl KTable {
    /// The shipped entries.
    pub fn builtin() -> Self {
        let mut t = KTable::default();
        t.merge_csv(BUILTIN_HAMMING.as_bytes()).expect("built-in covering table parses");
        t.merge_csv(BUILTIN_RANK.as_bytes()).expect("built-in rank table parses");
        t
    }

    /// Built-in entries plus every `*.csv` in `$LDBOUND_TABLES`.
    pub fn from_env() -> Result<Self> {
        let mut t = KTable::builtin();
        if let Some(dir) = std::env::var_os(TABLES_ENV) {
            t.merge_dir(Path::new(&dir))?;
        }
        Ok(t)
    }

    pub fn merge_dir(&mut self, dir: &Path) -> Result<()> {
        let mut files: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "csv"))
            .collect();
        files.sort();
        for f in files {
            self.merge_csv(std::fs::File::open(f)?)?;
        }
        Ok(())
    }

    /// Merge one CSV; the header decides whether it is a Hamming or rank
    /// table. On duplicate keys the smaller bound wins.
    pub fn merge_csv<R: Read>(&mut self, reader: R) -> Result<()> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let headers = rdr.headers().map_err(csv_err)?.clone();
        let is_rank = headers.iter().any(|h| h == "rho");
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(i + 2);
            if is_rank {
                let row: RankRow = rec.deserialize(Some(&headers)).map_err(csv_err)?;
                let k = parse_k(&row.k_upper, line)?;
                if row.n > row.m || row.rho > row.n || k > pow(row.q, row.m * row.n) {
                    return Err(Error::Parse { line, msg: "rank table entry out of range".into() });
                }
                insert_min(
                    &mut self.rank,
                    (row.q, row.m, row.n, row.rho),
                    TableEntry { k_upper: k, source: row.source },
                );
            } else {
                let row: HammingRow = rec.deserialize(Some(&headers)).map_err(csv_err)?;
                let k = parse_k(&row.k_upper, line)?;
                if row.r > row.n || k > pow(row.q, row.n) {
                    return Err(Error::Parse { line, msg: "table entry out of range (K_upper > q^n or R > n)".into() });
                }
                insert_min(&mut self.hamming, (row.q, row.n, row.r), TableEntry { k_upper: k, source: row.source });
            }
        }
        Ok(())
    }

    /// Best entry for `(q, n)` with radius at most `d`.
    pub fn hamming_lookup(&self, q: u64, n: u64, d: u64) -> Option<(u64, &TableEntry)> {
        self.hamming
            .range((q, n, 0)..=(q, n, d))
            .min_by(|a, b| a.1.k_upper.cmp(&b.1.k_upper))
            .map(|(&(_, _, r), e)| (r, e))
    }

    /// Best rank entry for `(q, m, n)` with radius at most `rho`.
    pub fn rank_lookup(&self, q: u64, m: u64, n: u64, rho: u64) -> Option<(u64, &TableEntry)> {
        self.rank
            .range((q, m, n, 0)..=(q, m, n, rho))
            .min_by(|a, b| a.1.k_upper.cmp(&b.1.k_upper))
            .map(|(&(_, _, _, r), e)| (r, e))
    }
}

fn insert_min<K: Ord>(map: &mut BTreeMap<K, TableEntry>, key: K, entry: TableEntry) {
    match map.get(&key) {
        Some(old) if old.k_upper <= entry.k_upper => {}
        _ => {
            map.insert(key, entry);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_entries() {
        let t = KTable::builtin();
        let (r, e) = t.hamming_lookup(2, 16, 3).unwrap();
        assert_eq!((r, e.k_upper.clone()), (3, BigUint::from(192u32)));
        assert!(t.hamming_lookup(2, 16, 2).is_none());
        assert_eq!(t.hamming_lookup(2, 16, 5).unwrap().0, 3);
        assert_eq!(t.rank_lookup(2, 6, 4, 2).unwrap().1.k_upper, BigUint::from(256u32));
    }

    #[test]
    fn merge_keeps_smaller() {
        let mut t = KTable::builtin();
        t.merge_csv("q,n,R,K_upper,source\n2,16,3,200,worse\n2,7,1,16,hamming code\n".as_bytes()).unwrap();
        assert_eq!(t.hamming[&(2, 16, 3)].k_upper, BigUint::from(192u32));
        assert_eq!(t.hamming[&(2, 7, 1)].source, "hamming code");
    }

    #[test]
    fn rejects_bad_rows() {
        let mut t = KTable::default();
        assert!(t.merge_csv("q,n,R,K_upper,source\n2,3,1,9,too big\n".as_bytes()).is_err());
        assert!(t.merge_csv("q,n,R,K_upper,source\n2,3,1,0,zero\n".as_bytes()).is_err());
        assert!(t.merge_csv("q,n,R,K_upper,source\n2,x,1,2,bad\n".as_bytes()).is_err());
    }

    #[test]
    fn merge_dir_reads_csv_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("extra.csv"), "q,m,n,rho,K_upper,source\n2,2,2,1,4,search\n").unwrap();
        std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let mut t = KTable::builtin();
        t.merge_dir(dir.path()).unwrap();
        assert_eq!(t.rank_lookup(2, 2, 2, 1).unwrap().1.k_upper, BigUint::from(4u32));
    }
}
