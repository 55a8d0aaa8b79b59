#ifndef RMDSPIN_DRIVE_HPP
#define RMDSPIN_DRIVE_HPP

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rmdspin {

// Which Hamiltonian acts during one period.
enum class HamLabel : std::uint8_t { Z, X };

inline char to_char(HamLabel l) { return l == HamLabel::Z ? 'Z' : 'X'; }
inline HamLabel flipped(HamLabel l) { return l == HamLabel::Z ? HamLabel::X : HamLabel::Z; }

// The two n-polar blocks. Recursion: B0+ = (Z), B0- = (X),
// Bn+ = B(n-1)+ ++ B(n-1)-, Bn- = B(n-1)- ++ B(n-1)+.
// minus_block is always the label-flip of plus_block.
struct BlockPair {
    int order = 0;
    std::vector<HamLabel> plus_block;
    std::vector<HamLabel> minus_block;
};

// Throws std::length_error for n > 30 (block length 2^n no longer fits).
BlockPair build_blocks(int n);

// Element k of the Thue-Morse sequence: Z when popcount(k) is even.
// This convention makes the sequence the n -> infinity limit of plus-block
// prefixes (thue_morse_label(0) == Z == B0+[0]).
inline HamLabel thue_morse_label(std::uint64_t k) {
    return (std::popcount(k) & 1) == 0 ? HamLabel::Z : HamLabel::X;
}

enum class DriveKind { Rmd, ThueMorse, Floquet };

struct DriveSpec {
    DriveKind kind = DriveKind::Rmd;
    int order = 0;          // RMD multipolar order n
    std::uint64_t seed = 0; // block-choice stream, RMD only
};

// Streaming source of Hamiltonian labels. Single consumer; copying clones the
// full state so a twin can replay from the same cursor.
class DriveGenerator {
public:
    explicit DriveGenerator(const DriveSpec& spec);

    HamLabel next_label();
    std::uint64_t cursor() const { return cursor_; }
    const DriveSpec& spec() const { return spec_; }

    // First `count` labels as a 'Z'/'X' string, for debugging dumps.
    std::string take_string(std::uint64_t count);

private:
    DriveSpec spec_;
    std::uint64_t cursor_ = 0;
    BlockPair blocks_;          // RMD only
    std::size_t block_offset_ = 0;
    bool minus_selected_ = false;
    std::mt19937_64 rng_;
};

} // namespace rmdspin

#endif
