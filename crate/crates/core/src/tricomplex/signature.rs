use super::{Perm, Triangulation, TriError};

const ALPHABET: &[u8; 64] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-";

/// Serialises the gluing table in breadth-first order from tetrahedron
/// `start` relabelled by `rho`; every gluing becomes identity in new labels
/// when it first discovers a tetrahedron.
fn bfs_code(t: &Triangulation, start: usize, rho: Perm, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let n = t.size();
    let mut index = vec![u32::MAX; n];
    let mut label = vec![Perm::IDENTITY; n];
    let mut order = Vec::with_capacity(n);
    index[start] = 0;
    label[start] = rho;
    order.push(start);
    let mut code: Vec<u32> = Vec::with_capacity(8 * n);
    let mut still_equal = best.is_some();
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        head += 1;
        let inv = label[a].inverse();
        for nf in 0..4 {
            let f = inv.apply(nf);
            let before = code.len();
            match t.gluing(a, f) {
                None => code.push(0),
                Some(g) => {
                    if index[g.tet] == u32::MAX {
                        index[g.tet] = order.len() as u32;
                        label[g.tet] = label[a].compose(g.perm.inverse());
                        order.push(g.tet);
                    }
                    let p = label[g.tet].compose(g.perm).compose(inv);
                    code.push(index[g.tet] + 1);
                    code.push(p.index() as u32);
                }
            }
            if still_equal {
                let b = best.expect("comparing");
                for i in before..code.len() {
                    match code[i].cmp(&b[i]) {
                        std::cmp::Ordering::Less => {
                            still_equal = false;
                            break;
                        }
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
    }
    Some(code)
}

fn digits_needed(max: u64) -> usize {
    let mut d = 1;
    let mut cap = 64u64;
    while max >= cap {
        d += 1;
        cap = cap.saturating_mul(64);
    }
    d
}

fn push_digits(out: &mut String, mut v: u64, width: usize) {
    let mut buf = vec![b'A'; width];
    for slot in buf.iter_mut().rev() {
        *slot = ALPHABET[(v % 64) as usize];
        v /= 64;
    }
    out.push_str(std::str::from_utf8(&buf).expect("ascii"));
}

/// Relabelling-invariant token: the lexicographically least breadth-first
/// gluing code over all starting tetrahedra and vertex labellings.
pub fn canonical_signature(t: &Triangulation) -> Result<String, TriError> {
    if !t.is_connected() {
        return Err(TriError::Disconnected);
    }
    let n = t.size();
    let mut best: Option<Vec<u32>> = None;
    for start in 0..n {
        for rho in Perm::all() {
            if let Some(code) = bfs_code(t, start, rho, best.as_deref()) {
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    let code = best.unwrap_or_default();
    let width = digits_needed((n as u64).max(23));
    let mut out = String::from("sig:");
    out.push(ALPHABET[width] as char);
    push_digits(&mut out, n as u64, width);
    for v in code {
        push_digits(&mut out, v as u64, width);
    }
    Ok(out)
}

/// Rebuilds a triangulation from a signature token.
pub fn parse_signature(sig: &str) -> Result<Triangulation, TriError> {
    let bad = |m: &str| TriError::BadSignature(m.to_string());
    let body = sig.strip_prefix("sig:").ok_or_else(|| bad("missing sig: prefix"))?.as_bytes();
    let digit = |c: u8| ALPHABET.iter().position(|&x| x == c).map(|d| d as u64).ok_or_else(|| bad("bad character"));
    let (&w, rest) = body.split_first().ok_or_else(|| bad("empty"))?;
    let width = digit(w)? as usize;
    if width == 0 || rest.len() % width != 0 {
        return Err(bad("bad length"));
    }
    let mut values = Vec::with_capacity(rest.len() / width);
    for chunk in rest.chunks(width) {
        let mut v = 0u64;
        for &c in chunk {
            v = v * 64 + digit(c)?;
        }
        values.push(v as usize);
    }
    let (&n, mut rest) = values.split_first().ok_or_else(|| bad("missing size"))?;
    let mut t = Triangulation::new(n);
    for a in 0..n {
        for f in 0..4 {
            let (&v, r) = rest.split_first().ok_or_else(|| bad("truncated"))?;
            rest = r;
            if v == 0 {
                continue;
            }
            let (&p, r) = rest.split_first().ok_or_else(|| bad("truncated"))?;
            rest = r;
            if v > n || p >= 24 {
                return Err(bad("value out of range"));
            }
            let perm = Perm::from_index(p);
            match t.gluing(a, f) {
                Some(g) if g.tet == v - 1 && g.perm == perm => {}
                Some(_) => return Err(bad("inconsistent gluing")),
                None => t.glue(a, f, v - 1, perm).map_err(|e| bad(&e.to_string()))?,
            }
        }
    }
    if !rest.is_empty() {
        return Err(bad("trailing data"));
    }
    Ok(t)
}
