//! Vertex covers reconfigure exactly when their complements do.

use isreconf::decider::decide_vertex_cover;
use isreconf::{fixtures, Model};

fn main() -> isreconf::Result<()> {
    let c6 = fixtures::cycle(6);
    let d = decide_vertex_cover(&c6, &[1, 3, 5], &[0, 2, 4], Model::Ts)?;
    println!("C6 covers {{v1,v3,v5}} -> {{v0,v2,v4}}: {}", d.answer);
    let p4 = fixtures::path(4);
    let d = decide_vertex_cover(&p4, &[1, 3], &[0, 2], Model::Ts)?;
    println!("P4 covers {{v1,v3}} -> {{v0,v2}}: {}", d.answer);
    match decide_vertex_cover(&p4, &[0], &[0, 2], Model::Ts) {
        Err(e) => println!("{{v0}} is not a cover of P4: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
