#include "rmdspin/drive.hpp"

#include "rmdspin/rng.hpp"

#include <stdexcept>

namespace rmdspin {

BlockPair build_blocks(int n) {
    if (n < 0) {
        throw std::invalid_argument("build_blocks: order must be non-negative");
    }
    if (n > 30) {
        throw std::length_error("build_blocks: order above 30 exceeds the block buffer limit");
    }
    BlockPair bp;
    bp.order = n;
    bp.plus_block = {HamLabel::Z};
    bp.minus_block = {HamLabel::X};
    for (int level = 1; level <= n; ++level) {
        std::vector<HamLabel> plus = bp.plus_block;
        plus.insert(plus.end(), bp.minus_block.begin(), bp.minus_block.end());
        std::vector<HamLabel> minus = bp.minus_block;
        minus.insert(minus.end(), bp.plus_block.begin(), bp.plus_block.end());
        bp.plus_block = std::move(plus);
        bp.minus_block = std::move(minus);
    }
    return bp;
}

DriveGenerator::DriveGenerator(const DriveSpec& spec)
    : spec_(spec), rng_(make_engine(derive_seed({spec.seed, 0x64726976ull}))) {
    if (spec_.kind == DriveKind::Rmd) {
        blocks_ = build_blocks(spec_.order);
        block_offset_ = blocks_.plus_block.size(); // force a draw on first call
    }
}

HamLabel DriveGenerator::next_label() {
    HamLabel label{};
    switch (spec_.kind) {
    case DriveKind::Rmd:
        if (block_offset_ == blocks_.plus_block.size()) {
            minus_selected_ = (rng_() & 1ull) != 0;
            block_offset_ = 0;
        }
        label = minus_selected_ ? blocks_.minus_block[block_offset_]
                                : blocks_.plus_block[block_offset_];
        ++block_offset_;
        break;
    case DriveKind::ThueMorse:
        label = thue_morse_label(cursor_);
        break;
    case DriveKind::Floquet:
        label = (cursor_ & 1ull) == 0 ? HamLabel::Z : HamLabel::X;
        break;
    }
    ++cursor_;
    return label;
}

std::string DriveGenerator::take_string(std::uint64_t count) {
    std::string out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        out.push_back(to_char(next_label()));
    }
    return out;
}

} // namespace rmdspin
