#include "mindwheel/thinkgear.hpp"

#include <string>

namespace mindwheel::thinkgear {

std::uint8_t checksum(std::span<const std::uint8_t> payload) {
    if (payload.empty())
        throw FrameError("payload is empty");
    if (payload.size() > kMaxPayload)
        throw FrameError("payload length " + std::to_string(payload.size()) +
                         " exceeds " + std::to_string(kMaxPayload));
    unsigned sum = 0;
    for (std::uint8_t b : payload) sum += b;
    return static_cast<std::uint8_t>(~sum & 0xFFu);
}

std::vector<DataRow> parse_payload(std::span<const std::uint8_t> payload) {
    std::vector<DataRow> rows;
    std::size_t i = 0;
    const std::size_t n = payload.size();
    while (i < n) {
        const std::uint8_t code = payload[i++];
        if (code < 0x80) {
            // Single value byte.
            if (i >= n) throw FrameError("truncated row 0x" + std::to_string(code));
            const std::uint8_t value = payload[i++];
            if (code == kCodePoorSignal) {
                if (value > 200) throw FrameError("poor-signal quality out of range");
                rows.push_back(PoorSignal{value});
            } else if (code == kCodeAttention) {
                if (value > 100) throw FrameError("attention level out of range");
                rows.push_back(Attention{value});
            }
            // other low codes: skipped
        } else {
            // Explicit length byte.
            if (i >= n) throw FrameError("truncated row length");
            const std::uint8_t len = payload[i++];
            if (i + len > n) throw FrameError("truncated row body");
            if (code == kCodeRawWave) {
                if (len != 2) throw FrameError("raw-wave row length must be 2");
                const std::uint16_t hi = payload[i];
                const std::uint16_t lo = payload[i + 1];
                rows.push_back(RawWave{static_cast<std::int16_t>((hi << 8) | lo)});
            }
            // other high codes: skipped
            i += len;
        }
    }
    return rows;
}

namespace {

void append_row(std::vector<std::uint8_t>& out, const DataRow& row) {
    if (const auto* raw = std::get_if<RawWave>(&row)) {
        const auto u = static_cast<std::uint16_t>(raw->value);
        out.push_back(kCodeRawWave);
        out.push_back(0x02);
        out.push_back(static_cast<std::uint8_t>(u >> 8));
        out.push_back(static_cast<std::uint8_t>(u & 0xFF));
    } else if (const auto* att = std::get_if<Attention>(&row)) {
        if (att->level > 100) throw FrameError("attention level out of range");
        out.push_back(kCodeAttention);
        out.push_back(att->level);
    } else {
        const auto& poor = std::get<PoorSignal>(row);
        if (poor.quality > 200) throw FrameError("poor-signal quality out of range");
        out.push_back(kCodePoorSignal);
        out.push_back(poor.quality);
    }
}

}  // namespace

std::vector<std::uint8_t> encode_packet(std::span<const DataRow> rows) {
    std::vector<std::uint8_t> payload;
    payload.reserve(rows.size() * 4);
    for (const DataRow& row : rows) append_row(payload, row);
    const std::uint8_t check = checksum(payload);  // validates 1..169

    std::vector<std::uint8_t> frame;
    frame.reserve(payload.size() + 4);
    frame.push_back(kSyncByte);
    frame.push_back(kSyncByte);
    frame.push_back(static_cast<std::uint8_t>(payload.size()));
    frame.insert(frame.end(), payload.begin(), payload.end());
    frame.push_back(check);
    return frame;
}

std::vector<Packet> Framer::push(std::span<const std::uint8_t> bytes) {
    std::vector<Packet> packets;
    for (const std::uint8_t b : bytes) {
        switch (state_) {
            case State::sync1:
                if (b == kSyncByte) {
                    state_ = State::sync2;
                } else {
                    ++stats_.bytes_discarded;
                }
                break;
            case State::sync2:
                if (b == kSyncByte) {
                    state_ = State::length;
                } else {
                    stats_.bytes_discarded += 2;
                    state_ = State::sync1;
                }
                break;
            case State::length:
                if (b == kSyncByte) {
                    // Sync glide: AA AA AA ... still counts as one sync pair.
                    ++stats_.bytes_discarded;
                } else if (b == 0 || b > kMaxPayload) {
                    stats_.bytes_discarded += 3;
                    state_ = State::sync1;
                } else {
                    expected_ = b;
                    payload_.clear();
                    state_ = State::payload;
                }
                break;
            case State::payload:
                payload_.push_back(b);
                if (payload_.size() == expected_) state_ = State::check;
                break;
            case State::check:
                if (b == checksum(payload_)) {
                    try {
                        packets.push_back(Packet{parse_payload(payload_)});
                        ++stats_.packets_decoded;
                    } catch (const FrameError&) {
                        ++stats_.packets_dropped;
                    }
                } else {
                    ++stats_.packets_dropped;
                }
                payload_.clear();
                state_ = State::sync1;
                break;
        }
    }
    return packets;
}

std::size_t Framer::pending_bytes() const {
    switch (state_) {
        case State::sync1: return 0;
        case State::sync2: return 1;
        case State::length: return 2;
        case State::payload: return 3 + payload_.size();
        case State::check: return 3 + payload_.size();
    }
    return 0;
}

void Framer::reset() {
    state_ = State::sync1;
    expected_ = 0;
    payload_.clear();
    stats_ = FramerStats{};
}

}  // namespace mindwheel::thinkgear
