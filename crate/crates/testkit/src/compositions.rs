/// All vectors in `{0..=h}^parts` summing to `h`, by a full odometer sweep.
pub fn brute_force_compositions(parts: usize, h: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if h == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut x = vec![0u32; parts];
    loop {
        if x.iter().sum::<u32>() == h {
            out.push(x.clone());
        }
        let mut k = 0;
        loop {
            if k == parts {
                return out;
            }
            if x[k] < h {
                x[k] += 1;
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}
