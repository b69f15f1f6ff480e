use super::config::{Coding, SimConfig};
use crate::channel::{add_awgn, ebn0_to_n0, effective_matrix, multipath_apply, ChannelKind, MultipathChannel};
use crate::constellation::bits_to_value;
use crate::detector::BlockDetector;
use crate::error::{config, Result};
use crate::ldpc::{build_code, LdpcCode, LdpcDecoder};
use crate::metrics::{papr, BerTally};
use crate::pattern::{make_scheme, SchemeSpec};
use crate::scalar::{Cplx, Real};
use crate::sefdm::{carrier_matrix, CarrierMatrix};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Fewest blocks whose index and data streams both fill whole codewords.
pub fn coded_batch_blocks(code_len: usize, g: usize, l1: usize, l2: usize) -> usize {
    let per = |l: usize| if l == 0 { 1 } else { code_len / gcd(code_len, g * l) };
    lcm(per(l1), per(l2))
}

/// Aligned transmit/receive bit streams of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutput {
    pub tx_index: Vec<u8>,
    pub tx_data: Vec<u8>,
    pub rx_index: Vec<u8>,
    pub rx_data: Vec<u8>,
    /// Linear PAPR of every transmitted block.
    pub papr: Vec<f64>,
}

impl ChainOutput {
    pub fn tally(&self) -> BerTally {
        let mut t = BerTally::default();
        t.record(&self.tx_index, &self.tx_data, &self.rx_index, &self.rx_data)
            .expect("chain streams are aligned");
        t
    }
}

/// Precomputed transmitter and receiver for one configuration.
#[derive(Debug, Clone)]
pub struct Link<T> {
    scheme: SchemeSpec<T>,
    carrier: CarrierMatrix<T>,
    detector: BlockDetector<T>,
    channel: Option<MultipathChannel>,
    code: Option<LdpcCode>,
    g: usize,
    blocks: usize,
}

fn random_bits<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u8> {
    (0..n).map(|_| rng.random::<bool>() as u8).collect()
}

impl<T: Real> Link<T> {
    pub fn new(cfg: &SimConfig) -> Result<Self> {
        cfg.validate()?;
        let scheme: SchemeSpec<T> = make_scheme(cfg.scheme)?;
        let carrier = carrier_matrix::<T>(cfg.n, cfg.scheme.alpha)?;
        let channel = match cfg.channel {
            ChannelKind::Awgn => None,
            ChannelKind::Paper3tap => Some(MultipathChannel::paper_three_tap()),
        };
        let matrix = match &channel {
            None => carrier.gram(),
            Some(ch) => effective_matrix(&carrier, ch)?,
        };
        let detector = BlockDetector::new(&scheme, &matrix).with_max_log(cfg.max_log);
        let g = cfg.g();
        let (code, blocks) = match cfg.coding {
            Coding::None => (None, cfg.uncoded_blocks),
            Coding::Ldpc { n, seed } => {
                let code = build_code(n, seed)?;
                let blocks = coded_batch_blocks(n, g, scheme.l1(), scheme.l2());
                (Some(code), blocks)
            }
        };
        Ok(Link { scheme, carrier, detector, channel, code, g, blocks })
    }

    pub fn scheme(&self) -> &SchemeSpec<T> {
        &self.scheme
    }

    pub fn code(&self) -> Option<&LdpcCode> {
        self.code.as_ref()
    }

    pub fn blocks_per_trial(&self) -> usize {
        self.blocks
    }

    /// Overrides the number of blocks per trial; coded links need whole
    /// codewords on both streams.
    pub fn with_blocks(mut self, blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return config("a trial needs at least one block");
        }
        if self.code.is_some() && blocks % self.blocks != 0 {
            return config(format!("coded trials need a multiple of {} blocks, got {blocks}", self.blocks));
        }
        self.blocks = blocks;
        Ok(self)
    }

    pub fn coding_rate(&self) -> f64 {
        self.code.as_ref().map_or(1.0, LdpcCode::rate)
    }

    /// Information bits carried by one trial.
    pub fn info_bits_per_trial(&self) -> usize {
        let coded = self.blocks * self.g * self.scheme.bits_per_subblock();
        (coded as f64 * self.coding_rate()).round() as usize
    }

    pub fn n0(&self, ebn0_db: f64) -> f64 {
        ebn0_to_n0(ebn0_db, &self.scheme, self.coding_rate(), self.g, self.carrier.n())
    }

    fn encode_stream(&self, info: &[u8]) -> Vec<u8> {
        match &self.code {
            None => info.to_vec(),
            Some(code) => info
                .chunks(code.k())
                .flat_map(|chunk| code.encode(chunk).expect("chunk has k bits"))
                .collect(),
        }
    }

    fn decode_stream(&self, llrs: &[T]) -> Vec<u8> {
        let code = self.code.as_ref().expect("soft path is coded");
        let dec = LdpcDecoder::new(code);
        llrs.chunks(code.n())
            .flat_map(|chunk| dec.decode(chunk).expect("chunk has n LLRs").info)
            .collect()
    }

    /// Modulated block for coded (or raw) streams; `b` selects the block.
    fn transmit_block(&self, index: &[u8], data: &[u8], b: usize, s: &mut [Cplx<T>]) -> Vec<Cplx<T>> {
        let (k, l1, l2) = (self.scheme.k(), self.scheme.l1(), self.scheme.l2());
        for gi in 0..self.g {
            let sb = b * self.g + gi;
            let iv = bits_to_value(&index[sb * l1..(sb + 1) * l1]);
            let dv = bits_to_value(&data[sb * l2..(sb + 1) * l2]);
            self.scheme.write_subblock(iv, dv, &mut s[gi * k..(gi + 1) * k]);
        }
        self.carrier.modulate(s)
    }

    /// One trial at noise variance `n0`.
    pub fn run_once<R: Rng + ?Sized>(&self, n0: f64, rng: &mut R) -> Result<ChainOutput> {
        let (l1, l2) = (self.scheme.l1(), self.scheme.l2());
        let subblocks = self.blocks * self.g;
        let rate = self.coding_rate();
        let tx_index = random_bits(((subblocks * l1) as f64 * rate).round() as usize, rng);
        let tx_data = random_bits(((subblocks * l2) as f64 * rate).round() as usize, rng);
        let coded_index = self.encode_stream(&tx_index);
        let coded_data = self.encode_stream(&tx_data);

        let n = self.carrier.n();
        let n0_t = T::of(n0);
        let mut s = vec![Cplx::<T>::zero(); n];
        let mut papr_out = Vec::with_capacity(self.blocks);
        let mut index_soft = Vec::new();
        let mut data_soft = Vec::new();
        let mut rx_index = Vec::new();
        let mut rx_data = Vec::new();
        for b in 0..self.blocks {
            let x = self.transmit_block(&coded_index, &coded_data, b, &mut s);
            papr_out.push(papr(&x)?);
            let mut y = match &self.channel {
                None => x,
                Some(ch) => multipath_apply(&x, ch)?,
            };
            add_awgn(&mut y, n0, rng);
            let r = self.carrier.demodulate(&y);
            if self.code.is_some() {
                let frame = self.detector.detect(&r, n0_t);
                index_soft.extend_from_slice(&frame.index_llrs);
                data_soft.extend_from_slice(&frame.data_llrs);
            } else {
                for (iv, dv) in self.detector.hard(&r) {
                    rx_index.extend(crate::constellation::value_to_bits(iv, l1));
                    rx_data.extend(crate::constellation::value_to_bits(dv, l2));
                }
            }
        }
        if self.code.is_some() {
            rx_index = self.decode_stream(&index_soft);
            rx_data = self.decode_stream(&data_soft);
        }
        Ok(ChainOutput { tx_index, tx_data, rx_index, rx_data, papr: papr_out })
    }

    /// Linear PAPR of `count` blocks of uniformly random subblocks.
    pub fn papr_samples<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<f64>> {
        let (l1, l2) = (self.scheme.l1(), self.scheme.l2());
        let mut s = vec![Cplx::<T>::zero(); self.carrier.n()];
        (0..count)
            .map(|_| {
                let index = random_bits(self.g * l1, rng);
                let data = random_bits(self.g * l2, rng);
                papr(&self.transmit_block(&index, &data, 0, &mut s))
            })
            .collect()
    }
}

/// Trial generator: `seed` selects the key, `stream` the trial.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs one trial of `block_batch` blocks from the configuration's seed.
pub fn run_chain_once(cfg: &SimConfig, ebn0_db: f64, block_batch: usize, stream: u64) -> Result<ChainOutput> {
    let link = Link::<f64>::new(cfg)?.with_blocks(block_batch)?;
    let n0 = link.n0(ebn0_db);
    link.run_once(n0, &mut trial_rng(cfg.seed, stream))
}
