use mulnpoly::divpoly::generic_ladder;
use mulnpoly::projmul::verify_triple_structure;
use std::time::Instant;

#[test]
#[ignore]
fn time_generic_builds() {
    let mut l = generic_ladder();
    for n in [4i64, 5, 6, 7] {
        let t0 = Instant::now();
        verify_triple_structure(n, &mut l).unwrap();
        println!("n = {n}: {:.2}s", t0.elapsed().as_secs_f64());
    }
}
