#ifndef MINDWHEEL_THINKGEAR_HPP
#define MINDWHEEL_THINKGEAR_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mindwheel/errors.hpp"

namespace mindwheel::thinkgear {

// Wire format, fixed as this repository's bit-exact contract:
//
//   frame    := 0xAA 0xAA <plength> <payload ...> <checksum>
//   plength  := payload byte count, 1..169 (0xAA itself is > 169, so a sync
//               byte can never be read as a valid length)
//   checksum := one's complement of the low 8 bits of the payload byte sum
//
//   payload rows:
//     0x02 <quality>            poor-signal quality, 0..200 (0 = best contact)
//     0x04 <level>              attention level, 0..100
//     0x80 0x02 <hi> <lo>       raw ADC sample, big-endian two's complement
//
//   Unknown row codes are skipped: codes < 0x80 carry one value byte,
//   codes >= 0x80 carry an explicit length byte.

inline constexpr std::uint8_t kSyncByte = 0xAA;
inline constexpr std::size_t kMaxPayload = 169;

inline constexpr std::uint8_t kCodePoorSignal = 0x02;
inline constexpr std::uint8_t kCodeAttention = 0x04;
inline constexpr std::uint8_t kCodeRawWave = 0x80;

struct RawWave {
    std::int16_t value;
    friend bool operator==(const RawWave&, const RawWave&) = default;
};

struct Attention {
    std::uint8_t level;  // 0..100
    friend bool operator==(const Attention&, const Attention&) = default;
};

struct PoorSignal {
    std::uint8_t quality;  // 0..200, 0 = best
    friend bool operator==(const PoorSignal&, const PoorSignal&) = default;
};

using DataRow = std::variant<RawWave, Attention, PoorSignal>;

struct Packet {
    std::vector<DataRow> rows;
    friend bool operator==(const Packet&, const Packet&) = default;
};

// One's complement of the payload byte sum, low 8 bits.
// Throws FrameError unless 1 <= payload size <= 169.
std::uint8_t checksum(std::span<const std::uint8_t> payload);

// Decodes the rows of a checksum-valid payload. Throws FrameError on a
// truncated row or an out-of-range value.
std::vector<DataRow> parse_payload(std::span<const std::uint8_t> payload);

// Serializes rows into a complete frame (sync + length + payload + checksum).
// Throws FrameError if the payload would be empty or exceed 169 bytes, or if
// a row value is out of range.
std::vector<std::uint8_t> encode_packet(std::span<const DataRow> rows);

struct FramerStats {
    std::uint64_t packets_decoded = 0;
    std::uint64_t packets_dropped = 0;   // checksum or payload-decode failures
    std::uint64_t bytes_discarded = 0;   // bytes skipped while hunting for sync
};

// Resynchronizing stream framer. Feed it arbitrary byte chunks; it emits
// packets as complete valid frames appear and keeps partial frame state
// between calls. One framer per stream; not shared across threads.
class Framer {
public:
    std::vector<Packet> push(std::span<const std::uint8_t> bytes);

    const FramerStats& stats() const { return stats_; }

    // Bytes currently buffered toward an incomplete frame.
    std::size_t pending_bytes() const;

    void reset();

private:
    enum class State { sync1, sync2, length, payload, check };

    State state_ = State::sync1;
    std::size_t expected_ = 0;
    std::vector<std::uint8_t> payload_;
    FramerStats stats_;
};

}  // namespace mindwheel::thinkgear

#endif
