use std::io::Write;

use clap::Args;
use drbgkit::encoding::to_hex;
use drbgkit::games::{run_lemmas, Adversary, EvalSettings, HybridParams, Lemma, Prf};
use drbgkit::prf::{hmac_sha256, sha256, Digest, HmacFn};

use crate::Outcome;

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Substitute a faulty HMAC to check that failures are reported.
    #[arg(long, hide = true)]
    pub broken_hmac: bool,
}

/// HMAC-SHA256 with the last output bit flipped.
pub fn broken_hmac(key: &[u8], message: &[u8]) -> Digest {
    let mut d = hmac_sha256(key, message);
    d.0[31] ^= 1;
    d
}

struct Mac {
    key: Vec<u8>,
    data: &'static [u8],
    /// Case 5 publishes only a 128-bit prefix.
    mac: &'static str,
}

fn rfc4231() -> [Mac; 7] {
    [
        Mac {
            key: vec![0x0b; 20],
            data: b"Hi There",
            mac: "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7",
        },
        Mac {
            key: b"Jefe".to_vec(),
            data: b"what do ya want for nothing?",
            mac: "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843",
        },
        Mac {
            key: vec![0xaa; 20],
            data: &[0xdd; 50],
            mac: "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe",
        },
        Mac {
            key: (1..=25).collect(),
            data: &[0xcd; 50],
            mac: "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b",
        },
        Mac {
            key: vec![0x0c; 20],
            data: b"Test With Truncation",
            mac: "a3b6167473100ee06e0c796c2955552b",
        },
        Mac {
            key: vec![0xaa; 131],
            data: b"Test Using Larger Than Block-Size Key - Hash Key First",
            mac: "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54",
        },
        Mac {
            key: vec![0xaa; 131],
            data: b"This is a test using a larger than block-size key and a larger than block-size data. The key needs to be hashed before being used by the HMAC algorithm.",
            mac: "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2",
        },
    ]
}

const FIPS180: [(&[u8], &str); 3] = [
    (
        b"",
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
    ),
    (
        b"abc",
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    ),
    (
        b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1",
    ),
];

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// RFC 4231 through `hmac`.
pub(crate) fn rfc4231_results(hmac: HmacFn) -> Vec<bool> {
    rfc4231()
        .iter()
        .map(|c| to_hex(hmac(&c.key, c.data).as_bytes()).starts_with(c.mac))
        .collect()
}

pub fn cmd_selftest(a: &SelftestArgs, out: &mut dyn Write) -> Outcome {
    let hmac: HmacFn = if a.broken_hmac {
        broken_hmac
    } else {
        hmac_sha256
    };
    let mut all = true;

    for (j, ok) in rfc4231_results(hmac).into_iter().enumerate() {
        writeln!(out, "check=rfc4231 case={} verdict={}", j + 1, verdict(ok))?;
        all &= ok;
    }
    for (j, (msg, digest)) in FIPS180.iter().enumerate() {
        let ok = sha256(msg).to_hex() == *digest;
        writeln!(out, "check=fips180 case={} verdict={}", j + 1, verdict(ok))?;
        all &= ok;
    }

    let settings = EvalSettings::default();
    for eta in 1..=2 {
        for num_calls in 1..=2 {
            for bpc in 1..=2 {
                let p = HybridParams::new(
                    eta,
                    num_calls,
                    bpc,
                    Prf::small_with(eta, hmac),
                    Adversary::collision_detector(),
                )
                .expect("valid parameters");
                for r in run_lemmas(&p, &Lemma::ALL, &settings) {
                    writeln!(out, "check=lemma {}", r.record())?;
                    all &= r.verdict && r.exact;
                }
            }
        }
    }
    writeln!(out, "summary verdict={}", verdict(all))?;
    Ok(all)
}
