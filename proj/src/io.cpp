#include "filtrate/io.hpp"

#include <cstdio>

namespace filtrate::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

CsvWriter& CsvWriter::cell(const std::string& text) {
    if (!first_) os_ << ',';
    os_ << text;
    first_ = false;
    return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(bool flag) { return cell(std::string(format_flag(flag))); }

void CsvWriter::end_row() {
    os_ << '\n';
    first_ = true;
}

}  // namespace filtrate::io
