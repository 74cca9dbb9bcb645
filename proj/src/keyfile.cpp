#include "physec/keyfile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace physec {

namespace {

const char* kFieldNames[3] = {"gamma", "x0", "y0"};

std::uint64_t parse_hex16(const std::string& tok, const std::string& where) {
    if (tok.size() != 16) {
        throw KeyFileError(where + ": expected 16 hex digits, got '" + tok + "'");
    }
    std::uint64_t v = 0;
    for (char c : tok) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw KeyFileError(where + ": invalid hex digit '" + std::string(1, c) + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

GeneratorKey parse_line(const std::string& line, const std::string& where) {
    std::istringstream iss(line);
    std::string tok[3];
    if (!(iss >> tok[0] >> tok[1] >> tok[2])) {
        throw KeyFileError(where + ": expected three hex fields (gamma x0 y0)");
    }
    std::string extra;
    if (iss >> extra) {
        throw KeyFileError(where + ": trailing content '" + extra + "'");
    }

    std::uint64_t v[3];
    for (int i = 0; i < 3; ++i) {
        v[i] = parse_hex16(tok[i], where + ": " + kFieldNames[i]);
    }
    if (v[0] == 0) throw KeyFileError(where + ": gamma: must be nonzero");
    if (v[2] == 0) throw KeyFileError(where + ": y0: must be nonzero");
    if (v[2] > LfsrState61::kMask) {
        throw KeyFileError(where + ": y0: top 3 bits must be zero (61-bit register)");
    }
    return GeneratorKey{Fraction64{v[0]}, Fraction64{v[1]}, LfsrState61{v[2]}};
}

}  // namespace

CipherKey parse_key_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        // blank lines and '#' comments are tolerated
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        lines.push_back(line);
    }
    if (lines.size() != 5) {
        throw KeyFileError(origin + ": expected 5 generator lines, got " +
                           std::to_string(lines.size()));
    }

    CipherKey key;
    for (int i = 0; i < 4; ++i) {
        key.bank[i] = parse_line(lines[i], origin + ": line " + std::to_string(i + 1) +
                                               " (bank lane " + std::to_string(i) + ")");
    }
    key.sync = parse_line(lines[4], origin + ": line 5 (sync)");
    return key;
}

std::string format_key_text(const CipherKey& key) {
    std::ostringstream out;
    auto emit = [&](const GeneratorKey& k) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016llx %016llx %016llx\n",
                      static_cast<unsigned long long>(k.gamma.raw),
                      static_cast<unsigned long long>(k.x0.raw),
                      static_cast<unsigned long long>(k.y0.raw));
        out << buf;
    };
    for (const auto& k : key.bank) emit(k);
    emit(key.sync);
    return out.str();
}

CipherKey load_key_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw KeyFileError("cannot open key file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_key_text(ss.str(), path);
}

void save_key_file(const std::string& path, const CipherKey& key) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw KeyFileError("cannot open for writing: " + path);
    out << format_key_text(key);
    if (!out) throw KeyFileError("write failed: " + path);
}

}  // namespace physec
