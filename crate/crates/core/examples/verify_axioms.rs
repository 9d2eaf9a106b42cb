//! Exhaustive axiom checks, including a coprime-reduced form that fails.

use divorder::functions::parse_function;
use divorder::metrics::{
    build_table, verify_indiscernibles_window, verify_pseudometric, Combinator, PseudometricSpec,
};

fn main() -> divorder::Result<()> {
    for (name, c, n) in [
        ("recip", Combinator::AddH, 360),
        ("sigma", Combinator::AddG, 5040),
        ("one", Combinator::AddH, 12),
    ] {
        let r = verify_pseudometric(&build_table(&PseudometricSpec::new(
            parse_function(name)?,
            c,
            n,
        )?));
        println!(
            "{:<22} pseudometric {}  metric {}",
            r.label,
            r.is_pseudometric(),
            r.is_metric()
        );
    }

    // g(x) = x under the coprime-reduced additive form at n = 24.
    let s = PseudometricSpec::unchecked(parse_function("id")?, Combinator::DeltaAddG, 24)?;
    let r = verify_pseudometric(&build_table(&s));
    println!(
        "{}: d(2,6)+d(6,24) = {}, d(2,24) = {}, {} violating triples, first {:?}",
        r.label,
        s.divisor_distance(2, 6) + s.divisor_distance(6, 24),
        s.divisor_distance(2, 24),
        r.triangle_violations,
        r.triangle_witnesses.first()
    );

    // On a window of integers no gcd extension separates x from x + n.
    let chi = PseudometricSpec::new(parse_function("chi:6")?, Combinator::AddH, 6)?;
    let w = verify_indiscernibles_window(&chi, 1, 12)?;
    println!(
        "chi_6 on [1, 12]: metric {}, witness {:?}",
        w.metric, w.witness
    );
    Ok(())
}
