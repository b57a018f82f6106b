#include "teig/tensor_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace teig {

namespace {

class Parser {
public:
    Parser(std::string path, std::string text)
        : path_(std::move(path)), text_(std::move(text))
    {
    }

    [[noreturn]] void fail(std::size_t offset, const std::string& what) const
    {
        throw std::runtime_error(path_ + ": parse error at byte " + std::to_string(offset) + ": " + what);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // Comment lines are only legal before the header.
    void skip_leading_comments()
    {
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                return;
            }
        }
    }

    std::string next_token()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail(start, "unexpected end of file");
        return text_.substr(start, pos_ - start);
    }

    void expect_keyword(const char* kw)
    {
        const std::size_t at = offset_after_ws();
        const std::string tok = next_token();
        if (tok != kw) fail(at, "expected '" + std::string(kw) + "', got '" + tok + "'");
    }

    long next_int(const char* what)
    {
        const std::size_t at = offset_after_ws();
        const std::string tok = next_token();
        char* end = nullptr;
        const long v = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0') fail(at, std::string("expected integer ") + what + ", got '" + tok + "'");
        return v;
    }

    double next_value(std::size_t index)
    {
        skip_ws();
        const std::size_t at = pos_;
        if (at >= text_.size())
            fail(at, "unexpected end of file while reading value " + std::to_string(index));
        const char* start = text_.c_str() + at;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) fail(at, "malformed value " + std::to_string(index));
        pos_ = at + static_cast<std::size_t>(end - start);
        if (!std::isfinite(v)) fail(at, "non-finite value " + std::to_string(index));
        return v;
    }

    void expect_eof()
    {
        skip_ws();
        if (pos_ < text_.size()) fail(pos_, "trailing content after the value list");
    }

    std::size_t offset_after_ws()
    {
        skip_ws();
        return pos_;
    }

private:
    std::string path_;
    std::string text_;
    std::size_t pos_ = 0;
};

} // namespace

void write_tensor(const std::string& path, const SymmetricTensor& t,
                  const std::vector<std::string>& comments)
{
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error(path + ": cannot open for writing");
    bool ok = true;
    for (const std::string& c : comments)
        ok = ok && std::fprintf(f, "# %s\n", c.c_str()) >= 0;
    ok = ok && std::fprintf(f, "TNS 1\n") >= 0;
    ok = ok && std::fprintf(f, "order %d dim %d layout dense\n", t.order(), t.dim()) >= 0;
    const std::vector<double>& v = t.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const char sep = (i % 8 == 7 || i + 1 == v.size()) ? '\n' : ' ';
        ok = ok && std::fprintf(f, "%.17g%c", v[i], sep) >= 0;
    }
    const bool closed = std::fclose(f) == 0;
    if (!ok || !closed) throw std::runtime_error(path + ": write failed");
}

SymmetricTensor read_tensor(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error(path + ": read failed");

    Parser p(path, buf.str());
    p.skip_leading_comments();
    const std::size_t at_magic = p.offset_after_ws();
    p.expect_keyword("TNS");
    const long version = p.next_int("format version");
    if (version != 1) p.fail(at_magic, "unsupported format version " + std::to_string(version));
    p.expect_keyword("order");
    const long m = p.next_int("order");
    p.expect_keyword("dim");
    const long n = p.next_int("dim");
    p.expect_keyword("layout");
    const std::size_t at_layout = p.offset_after_ws();
    const std::string layout = p.next_token();
    if (layout != "dense") p.fail(at_layout, "unsupported layout '" + layout + "'");
    if (m < 2 || m % 2 != 0 || m > 16) p.fail(at_magic, "order must be a small positive even integer, got " + std::to_string(m));
    if (n < 1) p.fail(at_magic, "dim must be >= 1, got " + std::to_string(n));

    const std::size_t count = dense_size(static_cast<int>(m), static_cast<int>(n));
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = p.next_value(i);
    p.expect_eof();
    return SymmetricTensor(static_cast<int>(m), static_cast<int>(n), std::move(values), false);
}

} // namespace teig
