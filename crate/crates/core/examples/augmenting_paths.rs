//! Free vertices, augmenting paths and the maximality test.

use isreconf::alternating::{find_any_augmenting_path, free_vertices, is_maximum};
use isreconf::oracle::brute_alpha;
use isreconf::{fixtures, independent_set_from_labels, make_independent_set};

fn main() -> isreconf::Result<()> {
    let g = fixtures::path(5);
    let i = independent_set_from_labels(&g, &["v1", "v3"])?;
    let free: Vec<&str> = free_vertices(&g, &i).iter().map(|&v| g.label(v)).collect();
    println!("free vertices of {{v1,v3}} in P5: {free:?}");
    let path = find_any_augmenting_path(&g, &i).expect("{v1,v3} is not maximum");
    let labels: Vec<&str> = path.vertices().iter().map(|&v| g.label(v)).collect();
    println!("augmenting path: {labels:?}");
    let bigger = make_independent_set(&g, &path.swap(i.vertices()))?;
    println!("after the swap: {} tokens, alpha = {}", bigger.len(), brute_alpha(&g)?);
    assert!(!is_maximum(&g, &i) && is_maximum(&g, &bigger));
    Ok(())
}
