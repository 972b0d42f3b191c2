#include "fmlab/spec_syntax.hpp"

#include "fmlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace fmlab {

namespace {

bool is_key_char(char c) { return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)); }

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(pos_, std::move(expected), std::string(text_));
    }

    std::string identifier(const char* what) {
        const std::size_t start = pos_;
        while (!done() && is_key_char(text_[pos_])) ++pos_;
        if (pos_ == start || !std::islower(static_cast<unsigned char>(text_[start]))) {
            pos_ = start;
            fail({what});
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        if (peek() != c) fail({std::string("'") + c + "'"});
        ++pos_;
    }

    double number() {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        auto digits = [&] {
            const std::size_t s = p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
            return p - s;
        };
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        std::size_t n = digits();
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            n += digits();
        }
        if (n == 0) fail({"number"});
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            std::size_t save = p;
            p = q;
            if (digits() == 0) p = save;
        }
        const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, text_.data() + p, v);
        if (ec != std::errc() || ptr != text_.data() + p) fail({"number"});
        pos_ = p;
        return v;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::optional<double> ParsedSpec::get(std::string_view key) const {
    for (const auto& p : params)
        if (p.key == key) return p.value;
    return std::nullopt;
}

double ParsedSpec::require(std::string_view key) const {
    if (auto v = get(key)) return *v;
    throw ParseError(text.size(), {std::string(key) + "=<number>"}, text);
}

void ParsedSpec::restrict_keys(const std::vector<std::string>& allowed) const {
    std::set<std::string> seen;
    for (const auto& p : params) {
        if (std::find(allowed.begin(), allowed.end(), p.key) == allowed.end())
            throw ParseError(p.offset, allowed, text);
        if (!seen.insert(p.key).second) throw ParseError(p.offset, {"distinct key"}, text);
    }
}

ParsedSpec parse_spec_syntax(std::string_view text, const std::vector<std::string>& names) {
    Scanner s(text);
    ParsedSpec out;
    out.text = std::string(text);
    const std::size_t name_at = s.pos();
    out.name = s.identifier("name");
    if (std::find(names.begin(), names.end(), out.name) == names.end())
        throw ParseError(name_at, names, out.text);
    if (s.done()) return out;
    s.expect(':');
    while (true) {
        const std::size_t key_at = s.pos();
        std::string key = s.identifier("key");
        s.expect('=');
        const double v = s.number();
        out.params.push_back({std::move(key), v, key_at});
        if (s.done()) break;
        if (s.peek() != ',') s.fail({"','", "end of input"});
        s.expect(',');
    }
    return out;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace fmlab
