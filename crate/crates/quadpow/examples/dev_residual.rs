use quadpow::constructions::catalog::*;
fn main() {
    for name in quadpow::constructions::catalog_names() {
        let e = quadpow::constructions::catalog(name).unwrap();
        match quadpow::dependence::verify_identity(&e.identity) {
            quadpow::dependence::VerifyOutcome::Pass => println!("OK   {}", name),
            quadpow::dependence::VerifyOutcome::Fail { residual } => {
                println!("FAIL {} residual: {:?}", name, residual);
            }
        }
    }
}
