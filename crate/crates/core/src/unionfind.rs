//! Disjoint sets with a payload merged at union time.

#[derive(Debug, Clone)]
pub struct DisjointSets<T> {
    parent: Vec<usize>,
    rank: Vec<u8>,
    payload: Vec<T>,
}

impl<T: Clone> DisjointSets<T> {
    pub fn new(payload: Vec<T>) -> Self {
        let n = payload.len();
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
            payload,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; the surviving root holds
    /// `merge(payload_a, payload_b)`.
    pub fn union_with(&mut self, a: usize, b: usize, merge: impl FnOnce(&T, &T) -> T) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let merged = merge(&self.payload[ra], &self.payload[rb]);
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.payload[hi] = merged;
        true
    }

    pub fn payload_of(&mut self, x: usize) -> &T {
        let r = self.find(x);
        &self.payload[r]
    }

    /// Dense class labels in order of first member, and the class payloads.
    pub fn classes(&mut self) -> (Vec<usize>, Vec<T>) {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut of = vec![0; n];
        let mut payloads = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = payloads.len();
                payloads.push(self.payload[r].clone());
            }
            of[x] = label[r];
        }
        (of, payloads)
    }
}

impl DisjointSets<()> {
    pub fn plain(n: usize) -> Self {
        DisjointSets::new(vec![(); n])
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.union_with(a, b, |_, _| ())
    }
}
