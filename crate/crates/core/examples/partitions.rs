//! Quotient partitions of D_n, refinement, and the pull-back to integer windows.

use divorder::functions::parse_function;
use divorder::metrics::{build_table, Combinator, PseudometricSpec};
use divorder::orders::{
    extend_to_window, induced_preorder, quotient_by_metric, quotient_by_preorder, refinement_check,
};

fn main() -> divorder::Result<()> {
    let s = PseudometricSpec::new(parse_function("bigomega")?, Combinator::AddF, 60)?;
    let by_metric = quotient_by_metric(&build_table(&s));
    let by_preorder = quotient_by_preorder(&induced_preorder(&s));
    println!("metric classes   {:?}", by_metric.blocks);
    println!("preorder classes {:?}", by_preorder.blocks);
    println!("refines: {}", refinement_check(&by_metric, &by_preorder)?);

    let chi = PseudometricSpec::new(parse_function("chi:12")?, Combinator::AddH, 12)?;
    let q = quotient_by_preorder(&induced_preorder(&chi));
    println!("chi_12 classes {:?}", q.blocks);
    let w = extend_to_window(&q, -12, 24)?;
    println!(
        "window [-12, 24]: {} blocks, 0 ~ 12: {}, 5 ~ 7: {}",
        w.block_count(),
        w.same_block(0, 12),
        w.same_block(5, 7)
    );
    Ok(())
}
