use drbgkit::prf::hmac_sha256;

struct Case {
    key: Vec<u8>,
    data: Vec<u8>,
    // Case 5 only publishes the first 128 bits.
    mac: &'static str,
}

fn rfc4231() -> Vec<Case> {
    vec![
        Case {
            key: vec![0x0b; 20],
            data: b"Hi There".to_vec(),
            mac: "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7",
        },
        Case {
            key: b"Jefe".to_vec(),
            data: b"what do ya want for nothing?".to_vec(),
            mac: "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843",
        },
        Case {
            key: vec![0xaa; 20],
            data: vec![0xdd; 50],
            mac: "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe",
        },
        Case {
            key: (1..=25).collect(),
            data: vec![0xcd; 50],
            mac: "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b",
        },
        Case {
            key: vec![0x0c; 20],
            data: b"Test With Truncation".to_vec(),
            mac: "a3b6167473100ee06e0c796c2955552b",
        },
        Case {
            key: vec![0xaa; 131],
            data: b"Test Using Larger Than Block-Size Key - Hash Key First".to_vec(),
            mac: "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54",
        },
        Case {
            key: vec![0xaa; 131],
            data: b"This is a test using a larger than block-size key and a larger than block-size data. The key needs to be hashed before being used by the HMAC algorithm.".to_vec(),
            mac: "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2",
        },
    ]
}

#[test]
fn rfc4231_sha256_cases() {
    for (j, c) in rfc4231().iter().enumerate() {
        let got = hmac_sha256(&c.key, &c.data).to_hex();
        assert!(got.starts_with(c.mac), "case {}: {got}", j + 1);
    }
}

#[test]
fn key_of_exactly_one_block_is_not_hashed() {
    let key = [0x5a; 64];
    let hashed = drbgkit::prf::sha256(&key);
    assert_ne!(
        hmac_sha256(&key, b"m").to_hex(),
        hmac_sha256(hashed.as_bytes(), b"m").to_hex()
    );
}
