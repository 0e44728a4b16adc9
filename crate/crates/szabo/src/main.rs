fn main() {
    println!("szabo");
}
