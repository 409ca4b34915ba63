//! Torus stability of a concrete pair, with its certificate re-verified.
//!
//! cargo run --example check_pair -- "x0*x1*x3 + x2^3" "x2" 1/2

use vgit::boundary::{torus_stability_verdict, Certificate};
use vgit::onepsgen::generate_fundamental_set;
use vgit::polyio::{parse_form_any, support_pair};
use vgit::stability::{coordinate_permutations, nonstable_certificate_in_frames};
use vgit::Rational;

fn main() {
    let mut args = std::env::args().skip(1);
    let surface = args.next().unwrap_or("x0*x1*x3 + x2^3".into());
    let divisor = args.next().unwrap_or("x2".into());
    let t: Rational = args.next().unwrap_or("1/2".into()).parse().expect("rational t");
    let f = parse_form_any(&surface, 3, Some(3)).expect("cubic form");
    let h = parse_form_any(&divisor, 3, Some(1)).expect("linear form");
    let pair = support_pair(&f, &h).unwrap();

    let v = torus_stability_verdict(&pair, &t).expect("t in (0,1)");
    println!("({f}, {h}) at t = {t}: {}", v.verdict);
    match &v.certificate {
        Certificate::SeparatingFunctional(c) => println!("  functional {:?} with mu {}", c.weights, c.mu),
        Certificate::HullMembership(c) => println!("  centroid as a combination of {} points", c.terms.len()),
    }
    println!("  certificate verified: {}", v.verify(&pair, &t));

    let fs = generate_fundamental_set(3, 3).unwrap();
    let frames = coordinate_permutations(4);
    match nonstable_certificate_in_frames(&pair, &fs, &t, &frames).unwrap() {
        Some(c) => println!(
            "  best member {} in frame {:?}: mu = {} ({})",
            fs.name_of(&c.lambda),
            c.frame,
            c.mu,
            c.verdict
        ),
        None => println!("  no member has mu >= 0 in any frame"),
    }
}
