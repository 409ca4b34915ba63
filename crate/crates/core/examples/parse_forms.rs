//! Parses forms in text and JSON notation and prints their supports.
//!
//! cargo run --example parse_forms -- "x0^2*x3 - 3/2*x1^3"

use vgit::polyio::{parse_form_any, support_of};
use vgit::report::join_monomials;

fn main() {
    let text = std::env::args().nth(1).unwrap_or("x0^2*x3 - 3/2*x1^3 + x0*x2^2".into());
    let form = match parse_form_any(&text, 3, None) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    println!("form:    {form}");
    println!("degree:  {}", form.degree());
    println!("support: {}", join_monomials(&support_of(&form)));
    println!("json:    {}", serde_json::to_string(&form.to_json()).unwrap());
}
