//! Two translates of a cone that meet along a ray which is a face of neither.

use lmhodge::corpus::ProductExtension;
use lmhodge::fans::{check_face_closure, check_fan, FanSet};

fn main() {
    let ex = ProductExtension::new();
    let tau = ex.tau();
    let mut cones = tau.faces();
    cones.extend(tau.ad(&ex.gamma(1, 1)).expect("γ is invertible").faces());
    let fan = FanSet::absolute(cones).expect("sharp cones");
    println!("face closed: {}", check_face_closure(&fan).ok);
    let r = check_fan(&fan).expect("same ambient space");
    println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
}
