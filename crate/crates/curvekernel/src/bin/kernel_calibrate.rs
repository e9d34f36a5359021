fn main() {
    println!("calibration placeholder");
}
