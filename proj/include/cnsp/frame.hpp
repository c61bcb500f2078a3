#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cnsp {

// Wire grammar, one frame per LF-terminated line, ASCII, no spaces:
//   EMG,<seq>,<t_ms>,<adc>                           adc in 0..1023
//   IMU,<seq>,<t_ms>,<ax>,<ay>,<az>,<gx>,<gy>,<gz>   signed, milli-g / milli-deg/s
//   BTN,<seq>,<t_ms>,<level>                         level in 1..3
// seq and t_ms are unsigned decimals without leading '+' or leading zeros
// (the literal "0" excepted). Button levels: green=1, yellow=2, red=3.

struct EmgFrame {
    std::uint64_t seq = 0;
    std::uint64_t t_ms = 0;
    int adc = 0;

    bool operator==(const EmgFrame&) const = default;
};

struct ImuFrame {
    std::uint64_t seq = 0;
    std::uint64_t t_ms = 0;
    std::int32_t ax = 0, ay = 0, az = 0; // milli-g
    std::int32_t gx = 0, gy = 0, gz = 0; // milli-deg/s

    bool operator==(const ImuFrame&) const = default;
};

struct ButtonFrame {
    std::uint64_t seq = 0;
    std::uint64_t t_ms = 0;
    int level = 1;

    bool operator==(const ButtonFrame&) const = default;
};

using Frame = std::variant<EmgFrame, ImuFrame, ButtonFrame>;

struct ParseError {
    enum class Kind { bad_tag, wrong_field_count, non_numeric_field, range_violation };

    Kind kind = Kind::bad_tag;
    std::string message;
};

std::string_view to_string(ParseError::Kind kind);

// Parsing never throws for malformed input; a line either decodes to a
// Frame or to a typed ParseError.
using ParseResult = std::variant<Frame, ParseError>;

// Decodes one line (without its terminator) against the grammar above.
ParseResult parse_line(std::string_view line);

// Canonical form: uppercase tag, comma-separated unpadded decimals, no
// spaces. parse_line(serialize_frame(f)) == f for every valid frame.
std::string serialize_frame(const Frame& frame);

std::uint64_t frame_seq(const Frame& frame);
std::uint64_t frame_t_ms(const Frame& frame);

struct StreamStats {
    std::uint64_t frames_ok = 0;
    std::uint64_t frames_malformed = 0;
    std::uint64_t frames_out_of_order = 0; // seq non-increasing within a frame type

    bool operator==(const StreamStats&) const = default;
};

struct ParsedStream {
    std::vector<Frame> frames; // input order, malformed lines skipped
    StreamStats stats;
};

ParsedStream parse_stream(std::span<const std::string> lines);

} // namespace cnsp
