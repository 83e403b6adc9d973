use std::cmp::Ordering;

use super::EvalError;
use crate::epidemic::InfluenceTable;
use crate::scalar::{ordered_sum, RealScalar, Scalar};

/// `max(1, round(p * n))`.
pub fn top_k_size(n: usize, fraction: f64) -> Result<usize, EvalError> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(EvalError::InvalidFraction(fraction));
    }
    Ok(((fraction * n as f64).round() as usize).clamp(1, n.max(1)))
}

/// Indices of the `k` largest values; ties go to the smaller index.
pub fn top_k<T: PartialOrd>(values: &[T], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    let by_rank = |&a: &usize, &b: &usize| {
        values[b]
            .partial_cmp(&values[a])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    };
    let k = k.min(values.len());
    if k < idx.len() && k > 0 {
        idx.select_nth_unstable_by(k - 1, by_rank);
        idx.truncate(k);
    }
    idx.sort_unstable_by(by_rank);
    idx.truncate(k);
    idx
}

/// Share of the top-`p` nodes by `truth` that are also in the top-`p` by
/// `scores`.
pub fn precision_at<T: Scalar>(scores: &[T], truth: &[T], fraction: f64) -> Result<T, EvalError> {
    if scores.len() != truth.len() {
        return Err(EvalError::LengthMismatch(scores.len(), truth.len()));
    }
    let k = top_k_size(scores.len(), fraction)?;
    let mut in_truth = vec![false; truth.len()];
    for i in top_k(truth, k) {
        in_truth[i] = true;
    }
    let hits = top_k(scores, k).into_iter().filter(|&i| in_truth[i]).count();
    Ok(T::from_count(hits as u64) / T::from_count(k as u64))
}

fn group_mean<T: RealScalar>(values: &[T], members: &[usize]) -> T {
    let mut picked: Vec<T> = members.iter().map(|&i| values[i]).collect();
    // descending order so that an elementwise-dominating group can never sum
    // lower after rounding
    picked.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    ordered_sum(picked) / T::from_count(members.len() as u64)
}

/// Relative gain of seeding the top nodes by `q_t` over the top nodes by
/// `q_inf`, measured by mean `q_t`.
pub fn relative_gain_at<T: RealScalar>(q_t: &[T], q_inf: &[T], fraction: f64) -> Result<T, EvalError> {
    if q_t.len() != q_inf.len() {
        return Err(EvalError::LengthMismatch(q_t.len(), q_inf.len()));
    }
    let k = top_k_size(q_t.len(), fraction)?;
    let best_now = group_mean(q_t, &top_k(q_t, k));
    let best_late = group_mean(q_t, &top_k(q_inf, k));
    if best_late == T::zero() {
        return Err(EvalError::ZeroReference);
    }
    Ok((best_now - best_late) / best_late)
}

/// [`relative_gain_at`] read from an influence table at step `t`.
pub fn relative_gain<T: RealScalar>(table: &InfluenceTable<T>, t: u32, fraction: f64) -> Result<T, EvalError> {
    let time = crate::epidemic::TimePoint::Step(t);
    let q_t = table.values_at(time).ok_or(EvalError::MissingTime(time))?;
    let q_inf: Vec<T> = table.curves.iter().map(|c| c.q_inf).collect();
    relative_gain_at(&q_t, &q_inf, fraction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_rounding() {
        assert_eq!(top_k_size(1000, 0.005).unwrap(), 5);
        assert_eq!(top_k_size(10, 0.005).unwrap(), 1);
        assert_eq!(top_k_size(1133, 0.005).unwrap(), 6);
        assert_eq!(top_k_size(4, 1.0).unwrap(), 4);
        assert!(top_k_size(10, 0.0).is_err());
        assert!(top_k_size(10, 1.5).is_err());
    }

    #[test]
    fn ties_prefer_smaller_ids() {
        assert_eq!(top_k(&[1.0, 3.0, 3.0, 2.0, 3.0], 2), vec![1, 2]);
        assert_eq!(top_k(&[5, 5, 5], 3), vec![0, 1, 2]);
        assert_eq!(top_k(&[0.1, 0.2], 5), vec![1, 0]);
    }

    #[test]
    fn precision_examples() {
        let truth: Vec<f64> = (0..20).map(|i| i as f64).collect();
        assert_eq!(precision_at(&truth, &truth, 0.25).unwrap(), 1.0);
        let reversed: Vec<f64> = truth.iter().map(|x| -x).collect();
        assert_eq!(precision_at(&reversed, &truth, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn three_of_five_shared() {
        let n = 1000;
        let truth: Vec<f64> = (0..n).map(|i| i as f64).collect();
        // truth top-5 is {999..995}; scores put 999, 998, 997 and two outsiders on top
        let mut scores = vec![0.0; n];
        for (rank, &i) in [999usize, 998, 997, 10, 11].iter().enumerate() {
            scores[i] = 100.0 - rank as f64;
        }
        assert_eq!(precision_at(&scores, &truth, 0.005).unwrap(), 0.6);
    }

    #[test]
    fn identical_rankings_have_no_gain() {
        let q_t = [0.1, 0.5, 0.3, 0.2];
        let q_inf = [0.2, 0.9, 0.6, 0.3];
        assert_eq!(relative_gain_at(&q_t, &q_inf, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn gain_from_disagreeing_rankings() {
        let q_t = [0.4f64, 0.2, 0.1];
        let q_inf = [0.5, 0.9, 0.1];
        // k = 1: best by q_t has 0.4, best by q_inf has q_t = 0.2
        let rg = relative_gain_at(&q_t, &q_inf, 0.3).unwrap();
        assert!((rg - 1.0).abs() < 1e-15);
    }
}
