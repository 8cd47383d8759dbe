use super::evolve::PhotonRecord;
use crate::error::{Error, Result};

/// Photon totals split by mode parity (mode numbers start at 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParitySplit {
    pub odd: f64,
    pub even: f64,
    pub odd_share: f64,
    pub even_share: f64,
}

pub const EVEN_SHARE_LIMIT: f64 = 0.05;

/// Parity split of sample `index`. With `asymptotic` set, an even-mode share
/// above 5 % is an error.
pub fn even_mode_suppression(record: &PhotonRecord, index: usize, asymptotic: bool) -> Result<ParitySplit> {
    let row = record
        .per_mode
        .get(index)
        .ok_or_else(|| Error::invalid("index", format!("record has {} samples", record.len())))?;
    let odd: f64 = row.iter().step_by(2).sum();
    let even: f64 = row.iter().skip(1).step_by(2).sum();
    let total = odd + even;
    let (odd_share, even_share) = if total > 0.0 { (odd / total, even / total) } else { (0.0, 0.0) };
    if asymptotic && even_share > EVEN_SHARE_LIMIT {
        return Err(Error::EvenModesNotSuppressed { share: even_share });
    }
    Ok(ParitySplit { odd, even, odd_share, even_share })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(row: Vec<f64>) -> PhotonRecord {
        PhotonRecord { times: vec![0.0], total: vec![row.iter().sum()], energy: vec![0.0], per_mode: vec![row] }
    }

    #[test]
    fn splits_by_mode_number() {
        let s = even_mode_suppression(&record(vec![3.0, 1.0, 0.5, 0.5]), 0, false).unwrap();
        assert_eq!((s.odd, s.even), (3.5, 1.5));
        assert!((s.odd_share - 0.7).abs() < 1e-15);
        assert!(even_mode_suppression(&record(vec![3.0, 1.0]), 0, true).is_err());
    }

    #[test]
    fn empty_cavity_has_zero_shares() {
        let s = even_mode_suppression(&record(vec![0.0; 4]), 0, true).unwrap();
        assert_eq!((s.odd_share, s.even_share), (0.0, 0.0));
    }
}
