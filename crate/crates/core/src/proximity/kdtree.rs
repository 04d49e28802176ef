use std::cmp::Ordering;

use crate::model::{squared_euclidean, PointD, SqDist};

const NIL: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Node {
    /// Position of the splitting point in the original input.
    point: usize,
    axis: usize,
    left: usize,
    right: usize,
}

/// Static k-d tree with exact rational comparisons.
///
/// Axis is chosen round-robin by depth and the split is at the lower
/// median. Points lying on the splitting plane always go to the left
/// subtree, so `left <= split < right` holds on the split axis.
#[derive(Clone, Debug)]
pub struct KdTree {
    points: Vec<PointD>,
    nodes: Vec<Node>,
    root: usize,
    dim: usize,
}

impl KdTree {
    /// Caller guarantees a non-empty set of equal-dimension points.
    pub(crate) fn build(points: Vec<PointD>) -> Self {
        let dim = points[0].dim();
        let mut tree = KdTree {
            nodes: Vec::with_capacity(points.len()),
            points,
            root: NIL,
            dim,
        };
        let mut idx: Vec<usize> = (0..tree.points.len()).collect();
        tree.root = tree.build_rec(&mut idx, 0);
        tree
    }

    fn build_rec(&mut self, idx: &mut [usize], depth: usize) -> usize {
        if idx.is_empty() {
            return NIL;
        }
        let axis = depth % self.dim;
        let points = &self.points;
        idx.sort_by(|&a, &b| {
            points[a]
                .coord(axis)
                .cmp(points[b].coord(axis))
                .then(a.cmp(&b))
        });
        let mid = (idx.len() - 1) / 2;
        let split = points[idx[mid]].coord(axis).clone();
        // everything equal to the split value joins the left side
        let end_eq = mid + idx[mid..].partition_point(|&k| *points[k].coord(axis) <= split);
        let point = idx[mid];
        idx[mid..end_eq].rotate_left(1);
        let (left_part, rest) = idx.split_at_mut(end_eq - 1);
        let right_part = &mut rest[1..];

        let slot = self.nodes.len();
        self.nodes.push(Node {
            point,
            axis,
            left: NIL,
            right: NIL,
        });
        let left = self.build_rec(left_part, depth + 1);
        let right = self.build_rec(right_part, depth + 1);
        self.nodes[slot].left = left;
        self.nodes[slot].right = right;
        slot
    }

    pub fn points(&self) -> &[PointD] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        fn rec(t: &KdTree, n: usize) -> usize {
            if n == NIL {
                0
            } else {
                1 + rec(t, t.nodes[n].left).max(rec(t, t.nodes[n].right))
            }
        }
        rec(self, self.root)
    }

    /// Nearest point to `q` as `(position, squared distance)`; ties go to
    /// the smallest position. Caller checks the dimension.
    pub(crate) fn nearest(&self, q: &PointD) -> (usize, SqDist) {
        let mut best: Option<(SqDist, usize)> = None;
        self.search(self.root, q, &mut best);
        let (d, i) = best.expect("tree is non-empty");
        (i, d)
    }

    fn search(&self, node: usize, q: &PointD, best: &mut Option<(SqDist, usize)>) {
        if node == NIL {
            return;
        }
        let n = &self.nodes[node];
        let p = &self.points[n.point];
        let d = squared_euclidean(p, q).expect("dimension checked by caller");
        let cand = (d, n.point);
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }

        let split = p.coord(n.axis);
        let diff = q.coord(n.axis) - split;
        let (near, far) = match diff.cmp(&crate::rat::Rat::zero()) {
            Ordering::Greater => (n.right, n.left),
            _ => (n.left, n.right),
        };
        self.search(near, q, best);
        // equality still has to be explored: a farther-side point may tie
        // on distance with a smaller position
        let plane = SqDist::new(diff.square()).expect("square is non-negative");
        if best.as_ref().is_none_or(|(b, _)| plane <= *b) {
            self.search(far, q, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn split_plane_points_go_left() {
        let pts: Vec<PointD> = [[1, 0], [1, 5], [1, 2], [0, 0], [2, 2]]
            .iter()
            .map(|c| PointD::from_ints(c))
            .collect();
        let t = KdTree::build(pts);
        let root = &t.nodes[t.root];
        assert_eq!(root.axis, 0);
        // sorted on x: 3,0,1,2,4 -> lower median position 2 -> point 1
        assert_eq!(root.point, 1);
        let mut left = Vec::new();
        collect(&t, root.left, &mut left);
        left.sort();
        assert_eq!(left, vec![0, 2, 3]);
        let mut right = Vec::new();
        collect(&t, root.right, &mut right);
        assert_eq!(right, vec![4]);
    }

    fn collect(t: &KdTree, n: usize, out: &mut Vec<usize>) {
        if n != NIL {
            out.push(t.nodes[n].point);
            collect(t, t.nodes[n].left, out);
            collect(t, t.nodes[n].right, out);
        }
    }

    #[test]
    fn duplicates_resolve_to_smallest_index() {
        let pts = vec![PointD::from_ints(&[2, 2]); 7];
        let t = KdTree::build(pts);
        let (i, d) = t.nearest(&PointD::from_ints(&[2, 2]));
        assert_eq!((i, d), (0, SqDist::zero()));
        let (i, _) = t.nearest(&PointD::from_ints(&[9, -9]));
        assert_eq!(i, 0);
    }

    #[test]
    fn balanced_depth() {
        let pts: Vec<PointD> = (0..1000)
            .map(|k| PointD::new(vec![Rat::from_int(k), Rat::from_int((k * 37) % 101)]))
            .collect();
        let t = KdTree::build(pts);
        assert!(t.depth() <= 11, "depth {}", t.depth());
    }
}
