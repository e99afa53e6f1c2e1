//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's algorithms: they only read graphs and groups.

#![allow(dead_code)]

use chromhom::graph::Graph;
use chromhom::homology::{AbelianGroup, BigradedHomology};

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank and invariant factors `d_k / d_{k-1}`, where `d_k` is the gcd of
/// all `k x k` minors.
pub fn minor_gcd_invariants(m: &[Vec<i64>]) -> (usize, Vec<i128>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut d = 0;
        for rs in choose(rows, k) {
            for cs in choose(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect()).collect();
                d = gcd(d, determinant(&minor));
            }
        }
        if d == 0 {
            break;
        }
        divisors.push(d);
    }
    let factors = divisors.windows(2).map(|w| w[1] / w[0]).collect::<Vec<_>>();
    (factors.len(), factors)
}

/// Cokernel of an integer matrix as an abelian group.
pub fn cokernel(m: &[Vec<i64>]) -> AbelianGroup {
    let (rank, factors) = minor_gcd_invariants(m);
    let torsion: Vec<u64> = factors.iter().filter(|&&f| f > 1).map(|&f| f as u64).collect();
    AbelianGroup::from_orders(m.len() - rank, &torsion)
}

/// `Z[x]/(p, q)` for monic `p`, as the cokernel of multiplication by `q` on
/// the basis `1, x, ..., x^{m-1}` of `Z[x]/(p)`. Coefficients low to high.
pub fn quotient_by_two(p: &[i64], q: &[i64]) -> AbelianGroup {
    let m = p.len() - 1;
    assert_eq!(p[m], 1, "monic");
    let reduce = |mut f: Vec<i64>| -> Vec<i64> {
        while f.len() > m {
            let lead = f.pop().expect("nonempty");
            let shift = f.len() - m;
            for (k, &c) in p[..m].iter().enumerate() {
                f[shift + k] -= lead * c;
            }
        }
        f.resize(m, 0);
        f
    };
    let columns: Vec<Vec<i64>> = (0..m)
        .map(|k| {
            let mut f = vec![0; k];
            f.extend_from_slice(q);
            reduce(f)
        })
        .collect();
    let matrix: Vec<Vec<i64>> = (0..m).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    cokernel(&matrix)
}

pub fn derivative(p: &[i64]) -> Vec<i64> {
    p.iter().enumerate().skip(1).map(|(k, &c)| k as i64 * c).collect()
}

/// Proper colorings with `k` colors, by enumeration.
pub fn proper_colorings(g: &Graph, k: usize) -> i128 {
    let v = g.vertex_count();
    if v == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let mut colors = vec![0usize; v];
    let mut count = 0;
    loop {
        if g.edges().iter().all(|&(a, b)| colors[a] != colors[b]) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == v {
                return count;
            }
            colors[pos] += 1;
            if colors[pos] < k {
                break;
            }
            colors[pos] = 0;
            pos += 1;
        }
    }
}

/// Chromatic polynomial in the falling factorial basis: `P(x) = Σ b_i (x)_i`
/// with `b_i = Δ^i P(0) / i!`, from coloring counts at `0..=v`.
pub fn chromatic_falling(g: &Graph) -> Vec<i128> {
    let v = g.vertex_count();
    let mut diffs: Vec<i128> = (0..=v).map(|k| proper_colorings(g, k)).collect();
    let mut out = Vec::with_capacity(v + 1);
    let mut factorial = 1i128;
    for i in 0..=v {
        if i > 0 {
            factorial *= i as i128;
        }
        assert_eq!(diffs[0] % factorial, 0);
        out.push(diffs[0] / factorial);
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    out
}

fn mul_truncated(a: &[i128], b: &[i128], len: usize) -> Vec<i128> {
    let mut out = vec![0; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `P_G(Q(q))` for `q^0 ..= q^top`.
pub fn chromatic_at_series(g: &Graph, qdim: &[i128], top: usize) -> Vec<i128> {
    let len = top + 1;
    let mut total = vec![0i128; len];
    let mut falling = vec![0i128; len];
    falling[0] = 1;
    for (i, &b) in chromatic_falling(g).iter().enumerate() {
        for (t, f) in total.iter_mut().zip(&falling) {
            *t += b * f;
        }
        let mut shifted: Vec<i128> = qdim.iter().copied().chain(std::iter::repeat(0)).take(len).collect();
        shifted[0] -= i as i128;
        falling = mul_truncated(&falling, &shifted, len);
    }
    total
}

/// `Σ (-1)^i rank H^{i,j}` for each `j` in `0..=top`.
pub fn homology_euler(h: &BigradedHomology, top: usize) -> Vec<i128> {
    let mut out = vec![0i128; top + 1];
    for ((i, j), g) in h.groups() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        if let Some(slot) = out.get_mut(j as usize) {
            *slot += sign * g.free_rank() as i128;
        }
    }
    out
}

/// Connected components by union-find: `(vertices, edges, is_tree)` per component.
pub fn components(g: &Graph) -> Vec<(usize, usize, bool)> {
    let v = g.vertex_count();
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut sizes = std::collections::BTreeMap::<usize, (usize, usize)>::new();
    for x in 0..v {
        sizes.entry(find(&mut parent, x)).or_default().0 += 1;
    }
    for &(a, _) in g.edges() {
        sizes.get_mut(&find(&mut parent, a)).expect("root").1 += 1;
    }
    sizes.values().map(|&(nv, ne)| (nv, ne, ne + 1 == nv)).collect()
}

fn simple_adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let v = g.vertex_count();
    let mut adj = vec![vec![false; v]; v];
    for &(a, b) in g.edges() {
        if a != b {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    adj
}

/// Lengths of all simple cycles of length at least three in the underlying
/// simple graph, by exhaustive path search.
pub fn cycle_lengths(g: &Graph) -> std::collections::BTreeSet<usize> {
    let adj = simple_adjacency(g);
    let v = adj.len();
    let mut lengths = std::collections::BTreeSet::new();
    fn extend(adj: &[Vec<bool>], start: usize, at: usize, visited: &mut Vec<bool>, len: usize, out: &mut std::collections::BTreeSet<usize>) {
        for next in 0..adj.len() {
            if !adj[at][next] {
                continue;
            }
            if next == start && len >= 3 {
                out.insert(len);
            } else if next > start && !visited[next] {
                visited[next] = true;
                extend(adj, start, next, visited, len + 1, out);
                visited[next] = false;
            }
        }
    }
    for start in 0..v {
        let mut visited = vec![false; v];
        visited[start] = true;
        extend(&adj, start, start, &mut visited, 1, &mut lengths);
    }
    lengths
}

pub fn has_loop(g: &Graph) -> bool {
    g.edges().iter().any(|&(a, b)| a == b)
}

pub fn is_simple(g: &Graph) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    g.edges().iter().all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
}

pub fn truncated_qdim(m: usize) -> Vec<i128> {
    vec![1; m]
}

/// Parse cells like `Z_2{2} ⊕ Z{1}` into `j -> group`.
pub fn parse_cell(cell: &str) -> std::collections::BTreeMap<u32, AbelianGroup> {
    let mut out = std::collections::BTreeMap::<u32, AbelianGroup>::new();
    if cell.trim() == "0" {
        return out;
    }
    for term in cell.split('⊕') {
        let term = term.trim();
        let (head, rest) = term.split_once('{').expect("term has a degree");
        let j: u32 = rest.trim_end_matches('}').parse().expect("degree");
        let group = match head.strip_prefix("Z_") {
            Some(order) => AbelianGroup::cyclic(order.parse().expect("order")),
            None => AbelianGroup::free(1),
        };
        let entry = out.entry(j).or_default();
        *entry = entry.direct_sum(&group);
    }
    out
}
