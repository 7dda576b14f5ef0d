use matsec::harness::Token;

fn forge() -> Token {
    Token { element: 0, arrival: 0, session: 0 }
}

fn main() {}
