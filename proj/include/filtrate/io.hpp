#pragma once

#include <ostream>
#include <string>

namespace filtrate::io {

/// Scientific notation with 17 significant digits (round-trip exact for doubles).
std::string format_double(double x);

/// 0/1 for CSV flag columns.
inline const char* format_flag(bool b) { return b ? "1" : "0"; }

/// Write a CSV cell sequence terminated by LF.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    CsvWriter& cell(const std::string& text);
    CsvWriter& cell(double value);
    CsvWriter& cell(bool flag);
    void end_row();

  private:
    std::ostream& os_;
    bool first_ = true;
};

}  // namespace filtrate::io
