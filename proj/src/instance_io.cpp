#include "mvhl/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mvhl {

std::string format_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

namespace {

double parse_double(const std::string& text) {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return value;
}

}  // namespace

Complex parse_complex(const std::string& token) {
    try {
        if (token.empty()) throw std::invalid_argument("empty token");
        if (token.back() != 'j') return {parse_double(token), 0.0};
        const std::string body = token.substr(0, token.size() - 1);
        if (body.empty()) throw std::invalid_argument("bare 'j'");
        // Split at the sign of the imaginary part: the last '+'/'-' that is
        // neither leading nor part of an exponent.
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            std::string im = body;
            if (im == "+" || im == "-") im += "1";
            return {0.0, parse_double(im)};
        }
        const std::string re = body.substr(0, split);
        std::string im = body.substr(split);
        if (im == "+" || im == "-") im += "1";
        return {parse_double(re), parse_double(im)};
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed complex value '" + token + "'");
    }
}

namespace {

struct ContentLine {
    std::string text;
    Index number = 0;
};

std::string trim(const std::string& raw) {
    const auto begin = raw.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = raw.find_last_not_of(" \t\r");
    return raw.substr(begin, end - begin + 1);
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string tok;
    while (stream >> tok) tokens.push_back(tok);
    return tokens;
}

bool is_header(const std::string& line) { return line.front() == '[' && line.back() == ']'; }

// Cursor over the non-blank, non-comment lines of the file.
class Parser {
public:
    Parser(std::istream& in, std::string origin) : origin_(std::move(origin)) {
        std::string raw;
        Index number = 0;
        while (std::getline(in, raw)) {
            ++number;
            std::string text = trim(raw);
            if (text.empty() || text[0] == '#') continue;
            lines_.push_back({std::move(text), number});
        }
    }

    bool done() const { return pos_ >= lines_.size(); }
    const std::string& peek() const { return lines_[pos_].text; }
    const std::string& take() { return lines_[pos_++].text; }

    [[noreturn]] void fail(const std::string& message) const {
        const Index number = lines_.empty() ? 0
                             : done()       ? lines_.back().number
                                            : lines_[pos_].number;
        throw IoError(origin_ + ":" + std::to_string(number) + ": " + message);
    }

private:
    std::string origin_;
    std::vector<ContentLine> lines_;
    std::size_t pos_ = 0;
};

}  // namespace

Instance parse_instance(std::istream& in, const std::string& origin) {
    Parser parser(in, origin);
    if (parser.done()) parser.fail("empty instance file");

    Instance inst;
    Index declared_s = 0, declared_n = 0, declared_k = 0;
    bool have_shape = false, have_y = false;
    std::vector<bool> have_b, have_x;

    auto read_matrix = [&](Index rows, Index cols, const std::string& field) {
        CMat M(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            if (parser.done() || is_header(parser.peek()))
                parser.fail("section [" + field + "] ended after " + std::to_string(i) +
                            " of " + std::to_string(rows) + " rows");
            const auto tokens = split_tokens(parser.take());
            if (static_cast<Index>(tokens.size()) != cols)
                parser.fail("row " + std::to_string(i) + " of [" + field + "] has " +
                            std::to_string(tokens.size()) + " values, expected " +
                            std::to_string(cols));
            for (Index j = 0; j < cols; ++j) {
                try {
                    M(i, j) = parse_complex(tokens[j]);
                } catch (const std::invalid_argument& err) {
                    parser.fail(std::string(err.what()) + " in [" + field + "]");
                }
            }
        }
        return M;
    };

    while (!parser.done()) {
        if (!is_header(parser.peek()))
            parser.fail("expected a [section] header, got '" + parser.peek() + "'");
        const std::string section = parser.take();
        const std::string name = section.substr(1, section.size() - 2);

        if (name == "shape") {
            std::string model_tag = "dft-rows";
            while (!parser.done() && !is_header(parser.peek())) {
                const std::string line = parser.take();
                const auto eq = line.find('=');
                if (eq == std::string::npos) parser.fail("expected 'key = value' in [shape]");
                const std::string key = trim(line.substr(0, eq));
                const std::string value = trim(line.substr(eq + 1));
                try {
                    if (key == "s") declared_s = std::stoll(value);
                    else if (key == "n") declared_n = std::stoll(value);
                    else if (key == "channels") declared_k = std::stoll(value);
                    else if (key == "model") model_tag = value;
                    else parser.fail("unknown [shape] key '" + key + "'");
                } catch (const std::runtime_error&) {
                    throw;
                } catch (const std::exception&) {
                    parser.fail("invalid value for [shape] key '" + key + "'");
                }
            }
            if (declared_s < 1 || declared_n < 1 || declared_k < 1)
                parser.fail("[shape] must declare positive s, n and channels");
            inst.s = declared_s;
            inst.n = declared_n;
            inst.subspaces.mats.assign(declared_k, CMat());
            have_b.assign(declared_k, false);
            have_x.assign(declared_k, false);
            have_shape = true;
            try {
                inst.subspaces.model = subspace_model_from_string(model_tag);
            } catch (const std::invalid_argument& err) {
                parser.fail(err.what());
            }
            continue;
        }

        if (!have_shape) parser.fail("[shape] must precede section [" + name + "]");

        if (name == "y") {
            if (have_y) parser.fail("duplicate section [y]");
            inst.y = read_matrix(declared_n, 1, "y").col(0);
            have_y = true;
        } else if (name.rfind("B_", 0) == 0 || name.rfind("X_", 0) == 0) {
            Index k = 0;
            try {
                k = std::stoll(name.substr(2));
            } catch (const std::exception&) {
                parser.fail("bad channel index in section [" + name + "]");
            }
            if (k < 1 || k > declared_k)
                parser.fail("channel index " + std::to_string(k) + " outside 1.." +
                            std::to_string(declared_k) + " in [" + name + "]");
            if (name[0] == 'B') {
                if (have_b[k - 1]) parser.fail("duplicate section [" + name + "]");
                inst.subspaces.mats[k - 1] = read_matrix(declared_n, declared_s, name);
                have_b[k - 1] = true;
            } else {
                if (inst.truth.empty()) inst.truth.assign(declared_k, CMat());
                if (have_x[k - 1]) parser.fail("duplicate section [" + name + "]");
                inst.truth[k - 1] = read_matrix(declared_s, declared_n, name);
                have_x[k - 1] = true;
            }
        } else {
            parser.fail("unknown section [" + name + "]");
        }
    }

    if (!have_shape) throw IoError(origin + ": missing [shape] section");
    if (!have_y) throw IoError(origin + ": missing [y] section");
    for (Index k = 0; k < declared_k; ++k)
        if (!have_b[k])
            throw IoError(origin + ": missing section [B_" + std::to_string(k + 1) +
                                     "]");
    if (!inst.truth.empty())
        for (Index k = 0; k < declared_k; ++k)
            if (!have_x[k])
                throw IoError(origin + ": truth sections incomplete, missing [X_" +
                                         std::to_string(k + 1) + "]");
    return inst;
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open instance file");
    return parse_instance(in, path);
}

void write_instance(std::ostream& out, const Instance& inst) {
    const Index K = static_cast<Index>(inst.subspaces.mats.size());
    out << "# mvhl instance\n[shape]\ns = " << inst.s << "\nn = " << inst.n
        << "\nchannels = " << K << "\nmodel = " << to_string(inst.subspaces.model) << "\n";
    out << "[y]\n";
    for (Index j = 0; j < inst.y.size(); ++j) out << format_complex(inst.y(j)) << "\n";
    for (Index k = 0; k < K; ++k) {
        out << "[B_" << (k + 1) << "]\n";
        const CMat& B = inst.subspaces.mats[k];
        for (Index i = 0; i < B.rows(); ++i) {
            for (Index j = 0; j < B.cols(); ++j)
                out << (j ? " " : "") << format_complex(B(i, j));
            out << "\n";
        }
    }
    for (Index k = 0; k < static_cast<Index>(inst.truth.size()); ++k) {
        out << "[X_" << (k + 1) << "]\n";
        const CMat& X = inst.truth[k];
        for (Index i = 0; i < X.rows(); ++i) {
            for (Index j = 0; j < X.cols(); ++j)
                out << (j ? " " : "") << format_complex(X(i, j));
            out << "\n";
        }
    }
}

void write_instance(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    write_instance(out, inst);
    if (!out) throw IoError(path + ": write failed");
}

}  // namespace mvhl
