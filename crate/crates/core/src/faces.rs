//! Face tracing on combinatorial maps.

/// Number of faces of the map with vertex rotation `sigma` and edge
/// involution `alpha`, both permutations of the same dart set. Faces are the
/// cycles of `sigma ∘ alpha`.
pub fn count_faces(sigma: &[usize], alpha: &[usize]) -> usize {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut faces = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = sigma[alpha[d]];
        }
    }
    faces
}

/// Face boundaries as dart sequences; each dart appears in exactly one face.
pub fn faces(sigma: &[usize], alpha: &[usize]) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.push(d);
            d = sigma[alpha[d]];
        }
        out.push(face);
    }
    out
}

/// Connected components of the map (orbits of the group generated by both
/// permutations).
pub fn count_components(sigma: &[usize], alpha: &[usize]) -> usize {
    let n = sigma.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for d in 0..n {
        for e in [sigma[d], alpha[d]] {
            let (a, b) = (find(&mut parent, d), find(&mut parent, e));
            parent[a] = b;
        }
    }
    (0..n).filter(|&d| find(&mut parent, d) == d).count()
}

/// Orientable genus from Euler's formula summed over components:
/// `V - E + F = 2C - 2g`.
pub fn genus(vertices: usize, edges: usize, faces: usize, components: usize) -> usize {
    let chi = vertices as i64 - edges as i64 + faces as i64;
    let g2 = 2 * components as i64 - chi;
    debug_assert!(g2 >= 0 && g2 % 2 == 0, "inconsistent map");
    (g2 / 2) as usize
}
