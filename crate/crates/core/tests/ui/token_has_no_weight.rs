use matsec::harness::Token;

fn peek(t: Token) -> f64 {
    t.weight()
}

fn main() {}
