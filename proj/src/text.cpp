#include "crs/text.hpp"

#include <algorithm>
#include <cctype>

#ifdef CRS_HAVE_ICU
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#endif

namespace crs::text {

char32_t next_scalar(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xF0) {
        len = 4;
        cp = b0 & 0x07u;
    } else if (b0 >= 0xE0) {
        len = 3;
        cp = b0 & 0x0Fu;
    } else if (b0 >= 0xC0) {
        len = 2;
        cp = b0 & 0x1Fu;
    }
    if (len == 1) {
        ++i;
        return cp;
    }
    if (i + len > s.size()) {
        ++i;
        return b0;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char c = byte(i + k);
        if ((c & 0xC0u) != 0x80u) {
            // Truncated sequence: consume the lead byte alone.
            ++i;
            return b0;
        }
        cp = (cp << 6) | (c & 0x3Fu);
    }
    i += len;
    return cp;
}

std::size_t scalar_count(std::string_view s) {
    std::size_t i = 0, n = 0;
    while (i < s.size()) {
        next_scalar(s, i);
        ++n;
    }
    return n;
}

std::vector<std::string> split_scalars(std::string_view s, std::size_t max_scalars) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const std::size_t start = i;
        std::size_t taken = 0;
        while (i < s.size() && taken < max_scalars) {
            next_scalar(s, i);
            ++taken;
        }
        out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

bool is_space_scalar(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\r':
        case U'\f':
        case U'\v':
        case U' ':
        case U'　':
            return true;
        default:
            return false;
    }
}

std::string trim(std::string_view s) {
    std::size_t i = 0;
    std::size_t begin = 0;
    while (i < s.size()) {
        const std::size_t at = i;
        if (!is_space_scalar(next_scalar(s, i))) {
            begin = at;
            break;
        }
        begin = i;
    }
    if (begin >= s.size()) return {};

    std::size_t end = begin;
    i = begin;
    while (i < s.size()) {
        const std::size_t at = i;
        if (!is_space_scalar(next_scalar(s, i))) end = i;
        (void)at;
    }
    return std::string(s.substr(begin, end - begin));
}

std::string nfc(std::string_view s) {
#ifdef CRS_HAVE_ICU
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || norm == nullptr) return std::string(s);
    const icu::UnicodeString input =
        icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    const icu::UnicodeString composed = norm->normalize(input, status);
    if (U_FAILURE(status)) return std::string(s);
    std::string out;
    composed.toUTF8String(out);
    return out;
#else
    return std::string(s);
#endif
}

bool nfc_supported() {
#ifdef CRS_HAVE_ICU
    return true;
#else
    return false;
#endif
}

std::string normalize_name(std::string_view s) { return trim(nfc(s)); }

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool iequals_ascii(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

bool is_not_provided(std::string_view s) {
    std::string t = trim(s);
    // Strip one layer of quotes or brackets and a trailing period.
    while (!t.empty() && (t.front() == '"' || t.front() == '[' || t.front() == '\'' ||
                          t.front() == char(0x60))) {
        t.erase(t.begin());
    }
    while (!t.empty() && (t.back() == '"' || t.back() == ']' || t.back() == '\'' ||
                          t.back() == '.' || t.back() == char(0x60))) {
        t.pop_back();
    }
    return iequals_ascii(trim(t), "Information not provided");
}

}  // namespace crs::text
