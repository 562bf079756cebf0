//! Orients a small tree, cuts two edges and looks up sub-tree roots.

use sdc::{orient, Edge, RootCache, SpanningTree};

fn main() -> sdc::Result<()> {
    //      0
    //     / \
    //    1   2
    //   / \   \
    //  3   4   5
    let edges = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]
        .map(|(u, v)| Edge::new(u, v, 1.0))
        .to_vec();
    let tree = SpanningTree::new(6, edges)?;
    let it = orient(&tree, 0)?;
    println!("parents   {:?}", it.parents());
    println!("bfs order {:?}", it.bfs_order());
    println!("4 below 1: {}, 5 below 1: {}", it.is_descendant(4, 1), it.is_descendant(5, 1));

    let mut forest = it.forest();
    forest.cut(1)?;
    forest.cut(5)?;
    println!("roots after cutting 1 and 5: {:?}", forest.roots());
    println!("root of every node: {:?}", forest.root_assignment());

    let mut cache = RootCache::new(forest.len());
    println!("cached root of 4: {}", cache.find_root(&forest, 4));
    println!("sub-tree under 1: {:?}", forest.subtree(1));
    Ok(())
}
