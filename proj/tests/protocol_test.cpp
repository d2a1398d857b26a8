#include "doctest.h"
#include "qbc/errors.hpp"
#include "qbc/protocol.hpp"

using namespace qbc;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

KeyBuffer buffer_of(const char* key) {
  KeyBuffer b;
  b.append(bits(key));
  return b;
}

// Builds an N=2 frame from Alice's bases, her outcomes and Bob's bases; Bob's
// bits equal Alice's outcomes wherever the bases agree (noiseless channel) and
// are `off_basis_bit` elsewhere.
Frame make_frame(unsigned alice_mask, unsigned outcome_mask, unsigned bob_mask, bool off_basis_bit = false) {
  Frame f;
  f.id = 0;
  for (unsigned i = 0; i < 8; ++i) {
    const Basis a = (alice_mask >> i) & 1 ? Basis::diagonal : Basis::rectilinear;
    const Basis b = (bob_mask >> i) & 1 ? Basis::diagonal : Basis::rectilinear;
    const bool out = (outcome_mask >> i) & 1;
    f.records.push_back({i, a, out, {b, a == b ? out : off_basis_bit}});
  }
  f.classification = classify(f.records, 2);
  return f;
}

// Rectilinear records carry `rect`, diagonal ones `diag`, alternating R D R D...
Frame interleaved(const char* rect, const char* diag) {
  Frame f;
  for (unsigned i = 0; i < 4; ++i) {
    f.records.push_back({2 * i, Basis::rectilinear, rect[i] == '1', {Basis::rectilinear, rect[i] == '1'}});
    f.records.push_back({2 * i + 1, Basis::diagonal, diag[i] == '1', {Basis::diagonal, diag[i] == '1'}});
  }
  f.classification = FrameClass::commitment_candidate;
  return f;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("one-time pad") {
  auto zero = buffer_of("0000");
  const auto c = otp_encrypt(bits("0000"), zero);
  CHECK(c.ciphertext.to_string() == "0000");

  auto key = buffer_of("10110110");
  const auto first = otp_encrypt(bits("0110"), key, 7);
  const auto second = otp_encrypt(bits("1111"), key, 8);
  CHECK(first.ciphertext.to_string() == "1101");
  CHECK(first.key_offset == 0);
  CHECK(second.key_offset == 4);
  CHECK(second.ciphertext.to_string() == "1001");
  CHECK(otp_decrypt(first.ciphertext, key, 0).to_string() == "0110");
  CHECK(otp_decrypt(second.ciphertext, key, 4).to_string() == "1111");
  CHECK(key.available() == 0);
  REQUIRE(key.spends().size() == 2);
  CHECK(key.spends()[1].tag == 8);

  CHECK_THROWS_AS(otp_encrypt(bits("1"), key), InsufficientKey);
  CHECK(key.consumed() == 8);
}

TEST_CASE("insufficient key consumes nothing") {
  auto key = buffer_of("101");
  CHECK_THROWS_AS(key.consume(4), InsufficientKey);
  CHECK(key.consumed() == 0);
  CHECK(key.spends().empty());
  CHECK_THROWS(key.pad(0, 1));  // not yet consumed
}

TEST_CASE("try_commit examples") {
  const Codebook full(2, 6), small(2, 2);
  auto p0 = buffer_of("11110000"), p1 = buffer_of("00001111");

  const auto ok = try_commit(interleaved("0110", "1010"), false, full, PayloadMode::raw, p0, p1);
  REQUIRE(ok);
  CHECK(ok->payload.to_string() == "0110");
  CHECK(ok->to_p0.ciphertext.to_string() == "1001");
  CHECK(ok->to_p1.ciphertext.to_string() == "0110");
  CHECK(ok->to_p0.relay == Relay::p0);
  CHECK(ok->to_p1.relay == Relay::p1);

  CHECK_FALSE(try_commit(interleaved("0111", "1010"), false, full, PayloadMode::raw, p0, p1));
  CHECK_FALSE(try_commit(interleaved("0110", "1010"), false, small, PayloadMode::raw, p0, p1));
  CHECK(p0.consumed() == 4);
  CHECK(p1.consumed() == 4);

  // Commit 1 uses the diagonal outcomes.
  const auto one = try_commit(interleaved("0111", "1010"), true, full, PayloadMode::raw, p0, p1);
  REQUIRE(one);
  CHECK(one->payload.to_string() == "1010");

  Frame normal = interleaved("0110", "1010");
  normal.classification = FrameClass::normal;
  CHECK_THROWS_AS(try_commit(normal, false, full, PayloadMode::raw, p0, p1), ProtocolError);
}

TEST_CASE("try_commit checks both buffers before spending") {
  const Codebook cb(2, 6);
  auto p0 = buffer_of("1111"), p1 = buffer_of("11");
  CHECK_THROWS_AS(try_commit(interleaved("0110", "1010"), false, cb, PayloadMode::raw, p0, p1), InsufficientKey);
  CHECK(p0.consumed() == 0);
  CHECK(p1.consumed() == 0);
}

TEST_CASE("compressed payloads") {
  const Codebook cb(2, 6);
  CHECK(payload_length(cb, PayloadMode::raw) == 4);
  CHECK(payload_length(cb, PayloadMode::compressed) == 4);
  const auto p = encode_payload(bits("0110"), true, cb, PayloadMode::compressed);
  CHECK(p.to_string() == "0101");
  const auto d = decode_payload(p, cb, PayloadMode::compressed);
  REQUIRE(d);
  CHECK(d->codeword.to_string() == "0110");
  CHECK(d->bit == true);
  CHECK_FALSE(decode_payload(bits("1100"), cb, PayloadMode::compressed));  // index 6 >= x
  CHECK_FALSE(decode_payload(bits("0111"), cb, PayloadMode::raw));
  CHECK_FALSE(decode_payload(bits("011"), cb, PayloadMode::raw));

  const Codebook big(8, 1000);
  CHECK(payload_length(big, PayloadMode::compressed) == 11);
  CHECK(payload_length(big, PayloadMode::raw) == 16);
}

TEST_CASE("relay consistency") {
  CHECK(relay_consistency_check(bits("0110"), bits("0110")));
  CHECK_FALSE(relay_consistency_check(bits("0110"), bits("0111")));
  CHECK_THROWS_AS(relay_consistency_check(std::nullopt, bits("0110")), ProtocolError);
  CHECK_THROWS_AS(relay_consistency_check(bits("0110"), std::nullopt), ProtocolError);
}

TEST_CASE("bob_verify thresholds") {
  const Codebook cb(2, 6);
  const Frame f = interleaved("0110", "1010");
  const auto d0 = make_disclosure(f, false, false, CheatStrategy::honest);
  const auto counts = count_verification(f.records, d0);
  CHECK(counts.n_rect == 4);
  CHECK(counts.n_diag == 4);
  CHECK(counts.n_err_rect == 0);

  CHECK(bob_verify(counts, d0, bits("0110"), cb, PayloadMode::raw, {2, 0.25}) == Verdict::accept0);
  CHECK(bob_verify(counts, d0, bits("0101"), cb, PayloadMode::raw, {2, 0.25}) == Verdict::reject);

  SUBCASE("count threshold") {
    auto low = counts;
    low.n_rect = 3;
    CHECK(bob_verify(low, d0, bits("0110"), cb, PayloadMode::raw, {4, 0.0}) == Verdict::reject);
    CHECK(bob_verify(low, d0, bits("0110"), cb, PayloadMode::raw, {3, 0.0}) == Verdict::accept0);
  }
  SUBCASE("error threshold is floor(E N_tol)") {
    const AcceptancePolicy policy{4, 0.5};  // tolerates 2 errors
    auto errs = counts;
    errs.n_err_rect = 2;
    CHECK(bob_verify(errs, d0, bits("0110"), cb, PayloadMode::raw, policy) == Verdict::accept0);
    errs.n_err_rect = 3;
    CHECK(bob_verify(errs, d0, bits("0110"), cb, PayloadMode::raw, policy) == Verdict::reject);
    // Diagonal errors do not count against a claim of 0.
    errs.n_err_rect = 0;
    errs.n_err_diag = 4;
    CHECK(bob_verify(errs, d0, bits("0110"), cb, PayloadMode::raw, policy) == Verdict::accept0);
  }
  SUBCASE("injected errors against ground truth") {
    Frame noisy = f;
    noisy.records[0].outcome = !noisy.records[0].outcome;
    const auto d = make_disclosure(noisy, false, false, CheatStrategy::honest);
    const auto c = count_verification(noisy.records, d);
    CHECK(c.n_err_rect == 1);
    // floor(0.25 * 2) + 1 = 1 error exceeds the tolerance.
    CHECK(bob_verify(c, d, d.substring(Basis::rectilinear), cb, PayloadMode::raw, {2, 0.25}) == Verdict::reject);
  }
  SUBCASE("compressed mode checks the embedded bit") {
    const auto good = encode_payload(bits("0110"), false, cb, PayloadMode::compressed);
    const auto lying = encode_payload(bits("0110"), true, cb, PayloadMode::compressed);
    CHECK(bob_verify(counts, d0, good, cb, PayloadMode::compressed, {2, 0.25}) == Verdict::accept0);
    CHECK(bob_verify(counts, d0, lying, cb, PayloadMode::compressed, {2, 0.25}) == Verdict::reject);
  }
}

TEST_CASE("claim-other-basis disclosure swaps basis labels only when lying") {
  const Frame f = interleaved("0110", "1010");
  const auto honest = make_disclosure(f, false, false, CheatStrategy::claim_other_basis);
  const auto lie = make_disclosure(f, false, true, CheatStrategy::claim_other_basis);
  CHECK(honest.substring(Basis::rectilinear).to_string() == "0110");
  CHECK(lie.substring(Basis::diagonal).to_string() == "0110");
  CHECK(lie.claimed_bit);
  // Every label disagrees with Bob, so nothing is countable.
  const auto c = count_verification(f.records, lie);
  CHECK(c.n_rect == 0);
  CHECK(c.n_diag == 0);
}

TEST_CASE("honest completeness over every commit-eligible N = 2 frame") {
  const Codebook cb(2, 6);
  const AcceptancePolicy policy{2, 0.25};
  std::uint64_t verified = 0, eligible = 0;
  for (unsigned alice = 0; alice < 256; ++alice) {
    if (__builtin_popcount(alice) != 4) continue;
    for (unsigned out = 0; out < 256; ++out) {
      for (bool bit : {false, true}) {
        const Frame probe = make_frame(alice, out, alice);
        if (!cb.contains(outcome_substring(probe, basis_for_bit(bit)))) continue;
        ++eligible;
        for (unsigned bob = 0; bob < 256; ++bob) {
          const Frame f = make_frame(alice, out, bob, bob & 1);
          KeyBuffer k0, k1;
          k0.append(BitString(4, true));
          k1.append(BitString(4, false));
          const auto pair = try_commit(f, bit, cb, PayloadMode::raw, k0, k1);
          REQUIRE(pair);
          const auto at_p0 = otp_decrypt(pair->to_p0.ciphertext, k0, pair->to_p0.key_offset);
          const auto at_p1 = otp_decrypt(pair->to_p1.ciphertext, k1, pair->to_p1.key_offset);
          REQUIRE(relay_consistency_check(at_p0, at_p1));
          const auto d = make_disclosure(f, bit, bit, CheatStrategy::honest);
          const auto c = count_verification(f.records, d);
          if (c.n_rect < policy.n_tol || c.n_diag < policy.n_tol) continue;
          ++verified;
          REQUIRE(bob_verify(c, d, at_p0, cb, PayloadMode::raw, policy) ==
                  (bit ? Verdict::accept1 : Verdict::accept0));
        }
      }
    }
  }
  CHECK(eligible == 70 * 16 * 6 * 2);
  CHECK(verified > 0);
}

TEST_CASE("unveil schedule") {
  const auto s = plan_unveil(10, {ChannelTiming{3, 2}, ChannelTiming{1, 1}});
  CHECK(s.receipt[0] == 13);
  CHECK(s.receipt[1] == 11);
  CHECK(s.epoch == 15);
  CHECK(s.consistent());
  auto broken = s;
  broken.epoch = 14;
  CHECK_FALSE(broken.consistent());

  const auto zero = plan_unveil(0, {ChannelTiming{0, 0}, ChannelTiming{0, 0}});
  CHECK(zero.epoch == 0);
  CHECK(zero.consistent());
}

}  // TEST_SUITE
