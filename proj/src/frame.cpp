#include "cnsp/frame.hpp"

#include <charconv>
#include <limits>
#include <optional>

namespace cnsp {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

bool all_digits(std::string_view text) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

enum class NumParse { ok, malformed, overflow };

// Unsigned decimal, no leading '+', no leading zeros except "0" itself.
NumParse parse_u64(std::string_view text, std::uint64_t& out) {
    if (!all_digits(text)) return NumParse::malformed;
    if (text.size() > 1 && text.front() == '0') return NumParse::malformed;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec == std::errc::result_out_of_range) return NumParse::overflow;
    if (ec != std::errc() || ptr != text.data() + text.size()) return NumParse::malformed;
    return NumParse::ok;
}

// Signed decimal in canonical form: optional '-', no leading zeros, no "-0".
bool parse_i32(std::string_view text, std::int32_t& out) {
    std::string_view digits = text;
    const bool negative = !digits.empty() && digits.front() == '-';
    if (negative) digits.remove_prefix(1);
    if (!all_digits(digits)) return false;
    if (digits.size() > 1 && digits.front() == '0') return false;
    if (negative && digits == "0") return false;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return false;
    if (value < std::numeric_limits<std::int32_t>::min() ||
        value > std::numeric_limits<std::int32_t>::max()) {
        return false;
    }
    out = static_cast<std::int32_t>(value);
    return true;
}

ParseError make_error(ParseError::Kind kind, std::string message) {
    return ParseError{kind, std::move(message)};
}

} // namespace

std::string_view to_string(ParseError::Kind kind) {
    switch (kind) {
    case ParseError::Kind::bad_tag: return "bad_tag";
    case ParseError::Kind::wrong_field_count: return "wrong_field_count";
    case ParseError::Kind::non_numeric_field: return "non_numeric_field";
    case ParseError::Kind::range_violation: return "range_violation";
    }
    return "unknown";
}

ParseResult parse_line(std::string_view line) {
    const auto fields = split_fields(line);
    const std::string_view tag = fields[0];

    std::size_t expected = 0;
    if (tag == "EMG" || tag == "BTN") {
        expected = 4;
    } else if (tag == "IMU") {
        expected = 9;
    } else {
        return make_error(ParseError::Kind::bad_tag, "unknown frame tag");
    }
    if (fields.size() != expected) {
        return make_error(ParseError::Kind::wrong_field_count,
                          std::string(tag) + " frame needs " + std::to_string(expected) + " fields");
    }

    const auto unsigned_field = [&](std::string_view text, const char* name,
                                    std::uint64_t& out) -> std::optional<ParseError> {
        switch (parse_u64(text, out)) {
        case NumParse::ok: return std::nullopt;
        case NumParse::overflow:
            return make_error(ParseError::Kind::range_violation, std::string(name) + " overflows");
        case NumParse::malformed:
        default:
            return make_error(ParseError::Kind::non_numeric_field, "bad " + std::string(name) + " field");
        }
    };

    std::uint64_t seq = 0, t_ms = 0;
    if (auto err = unsigned_field(fields[1], "seq", seq)) return *err;
    if (auto err = unsigned_field(fields[2], "t_ms", t_ms)) return *err;

    if (tag == "EMG") {
        std::uint64_t adc = 0;
        if (auto err = unsigned_field(fields[3], "adc", adc)) return *err;
        if (adc > 1023) {
            return make_error(ParseError::Kind::range_violation, "adc out of [0, 1023]");
        }
        return Frame{EmgFrame{seq, t_ms, static_cast<int>(adc)}};
    }
    if (tag == "BTN") {
        std::uint64_t level = 0;
        if (auto err = unsigned_field(fields[3], "level", level)) return *err;
        if (level < 1 || level > 3) {
            return make_error(ParseError::Kind::range_violation, "level out of [1, 3]");
        }
        return Frame{ButtonFrame{seq, t_ms, static_cast<int>(level)}};
    }

    ImuFrame imu;
    imu.seq = seq;
    imu.t_ms = t_ms;
    std::int32_t* slots[] = {&imu.ax, &imu.ay, &imu.az, &imu.gx, &imu.gy, &imu.gz};
    for (std::size_t i = 0; i < 6; ++i) {
        if (!parse_i32(fields[3 + i], *slots[i])) {
            return make_error(ParseError::Kind::non_numeric_field, "bad IMU axis field");
        }
    }
    return Frame{imu};
}

std::string serialize_frame(const Frame& frame) {
    std::string out;
    if (const auto* emg = std::get_if<EmgFrame>(&frame)) {
        out = "EMG," + std::to_string(emg->seq) + ',' + std::to_string(emg->t_ms) + ',' +
              std::to_string(emg->adc);
    } else if (const auto* imu = std::get_if<ImuFrame>(&frame)) {
        out = "IMU," + std::to_string(imu->seq) + ',' + std::to_string(imu->t_ms);
        for (std::int32_t v : {imu->ax, imu->ay, imu->az, imu->gx, imu->gy, imu->gz}) {
            out += ',';
            out += std::to_string(v);
        }
    } else {
        const auto& btn = std::get<ButtonFrame>(frame);
        out = "BTN," + std::to_string(btn.seq) + ',' + std::to_string(btn.t_ms) + ',' +
              std::to_string(btn.level);
    }
    return out;
}

std::uint64_t frame_seq(const Frame& frame) {
    return std::visit([](const auto& f) { return f.seq; }, frame);
}

std::uint64_t frame_t_ms(const Frame& frame) {
    return std::visit([](const auto& f) { return f.t_ms; }, frame);
}

ParsedStream parse_stream(std::span<const std::string> lines) {
    ParsedStream result;
    bool seen[3] = {false, false, false};
    std::uint64_t last_seq[3] = {0, 0, 0};
    for (const std::string& line : lines) {
        ParseResult parsed = parse_line(line);
        if (std::holds_alternative<ParseError>(parsed)) {
            ++result.stats.frames_malformed;
            continue;
        }
        Frame frame = std::get<Frame>(parsed);
        const std::size_t type = frame.index();
        const std::uint64_t seq = frame_seq(frame);
        if (seen[type] && seq <= last_seq[type]) {
            ++result.stats.frames_out_of_order;
        }
        seen[type] = true;
        last_seq[type] = seq;
        ++result.stats.frames_ok;
        result.frames.push_back(std::move(frame));
    }
    return result;
}

} // namespace cnsp
