/// Disjoint sets with an optional parity bit relative to the root.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    parity: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect(), parity: vec![0; n] }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find_parity(&mut self, x: usize) -> (usize, u8) {
        let (mut r, mut acc) = (x, 0u8);
        while self.parent[r] as usize != r {
            acc ^= self.parity[r];
            r = self.parent[r] as usize;
        }
        // Compress: point every node on the path at the root.
        let (mut y, mut cur) = (x, acc);
        while self.parent[y] as usize != y {
            let (next, py) = (self.parent[y] as usize, self.parity[y]);
            self.parent[y] = r as u32;
            self.parity[y] = cur;
            cur ^= py;
            y = next;
        }
        (r, acc)
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.find_parity(x).0
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.union_parity(a, b, 0)
    }

    /// Joins `a` and `b` with relative parity `p`; returns false on a parity conflict.
    pub fn union_parity(&mut self, a: usize, b: usize, p: u8) -> bool {
        let (ra, pa) = self.find_parity(a);
        let (rb, pb) = self.find_parity(b);
        if ra == rb {
            return pa ^ pb == p;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        self.parity[hi] = pa ^ pb ^ p;
        true
    }

    /// Dense class ids in order of first appearance, and the class count.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            out[x] = id[r];
        }
        (out, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_tracking() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union_parity(0, 1, 1));
        assert!(uf.union_parity(1, 2, 1));
        assert!(uf.union_parity(3, 2, 0));
        assert_eq!(uf.find_parity(0).1 ^ uf.find_parity(2).1, 0);
        assert_eq!(uf.find_parity(0).1 ^ uf.find_parity(3).1, 0);
        assert!(!uf.union_parity(0, 3, 1));
        assert!(uf.union_parity(0, 3, 0));
        let (c, k) = uf.classes();
        assert_eq!(k, 2);
        assert_eq!(c, vec![0, 0, 0, 0, 1]);
    }
}
