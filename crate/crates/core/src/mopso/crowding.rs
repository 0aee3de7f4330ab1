/// NSGA-II crowding distance of each point.
///
/// For every objective the points are sorted, both extremes get `+inf` and
/// each interior point accumulates the gap between its neighbours divided by
/// the objective's span. Objectives with zero span contribute nothing. Sets
/// of one or two points are all boundary.
pub fn crowding_distances<P: AsRef<[f64]>>(points: &[P]) -> Vec<f64> {
    let n = points.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let dims = points[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..dims {
        let value = |i: usize| points[i].as_ref()[k];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (lo, hi) = (value(order[0]), value(order[n - 1]));
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        for w in order.windows(3) {
            distance[w[1]] += (value(w[2]) - value(w[0])) / span;
        }
    }
    distance
}
