#include "rmdspin/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace rmdspin {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) {
        throw std::runtime_error("CsvWriter: cannot open " + path);
    }
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (k > 0) {
            out_ << ',';
        }
        out_ << names[k];
    }
    out_ << '\n';
}

void CsvWriter::separator() {
    if (row_open_) {
        out_ << ',';
    }
    row_open_ = true;
}

CsvWriter& CsvWriter::field(double v) {
    separator();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(std::uint64_t v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(std::int64_t v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(bool v) {
    separator();
    out_ << (v ? "true" : "false");
    return *this;
}

CsvWriter& CsvWriter::field(std::string_view v) {
    separator();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_open_ = false;
}

} // namespace rmdspin
