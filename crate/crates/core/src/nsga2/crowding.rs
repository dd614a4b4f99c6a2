use std::cmp::Ordering;

/// Crowding distance of each member of a single front.
///
/// Boundary solutions of every objective get `+inf`; interior solutions sum
/// the range-normalized gap between their two neighbours. Objectives with a
/// zero range contribute nothing.
pub fn crowding_distance<T: AsRef<[f64]>>(front: &[T]) -> Vec<f64> {
    let n = front.len();
    if n == 0 {
        return Vec::new();
    }
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let value = |i: usize| front[i].as_ref()[k];
        order.sort_by(|&a, &b| value(a).partial_cmp(&value(b)).unwrap_or(Ordering::Equal));
        let lo = value(order[0]);
        let hi = value(order[n - 1]);
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            distance[w[1]] += (value(w[2]) - value(w[0])) / range;
        }
    }
    distance
}
