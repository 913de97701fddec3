//! Local-energy bounds for non-symmetric matrices: real and imaginary parts
//! of the principal eigenvalue, checked against the Perron root.

use eigenbounds::discrete::nonsym_bounds_real;
use eigenbounds::linalg::{perron_root, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> eigenbounds::Result<()> {
    let k = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]])?;
    let b = nonsym_bounds_real(&k, &[1.0, 1.0])?;
    println!(
        "[[1,2],[3,1]], phi = 1: Re in [{}, {}], root 1 + sqrt 6 = {:.6}",
        b.re_lower,
        b.re_upper,
        1.0 + 6f64.sqrt()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 6;
    let data: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let k = Matrix::new(n, n, data)?;
    let (root, _) = perron_root(&k, 1e-12, 100_000)?;
    // the profile is built from the transpose, so its Perron vector is the exact test vector
    let transpose = Matrix::new(n, n, (0..n * n).map(|i| k.get(i % n, i / n)).collect())?;
    let (_, left) = perron_root(&transpose, 1e-12, 100_000)?;
    for (label, phi) in [("ones", vec![1.0; n]), ("left Perron", left)] {
        let b = nonsym_bounds_real(&k, &phi)?;
        println!(
            "{label:>13}: Re in [{:.8}, {:.8}], Im in [{:.1e}, {:.1e}], root {root:.8}",
            b.re_lower, b.re_upper, b.im_lower, b.im_upper
        );
    }
    Ok(())
}
