#include "wigcert/field_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace wigcert {

namespace {

constexpr char kFieldMagic[9] = "WGCFLD01";
constexpr char kWaveMagic[9] = "WGCWFN01";

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// host is little-endian on every supported target; doubles are memcpy'd
void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

void write_axes_bin(std::ostream& os, const std::vector<AxisSpec>& axes) {
  for (const AxisSpec& a : axes) {
    put_u32(os, static_cast<std::uint32_t>(a.points));
    put_f64(os, a.half_extent);
  }
}

std::vector<AxisSpec> read_axes_bin(std::istream& is, int count) {
  std::vector<AxisSpec> axes(count);
  for (int i = 0; i < count; ++i) {
    axes[i].points = static_cast<int>(get_u32(is));
    axes[i].half_extent = get_f64(is);
  }
  return axes;
}

void write_values_bin(std::ostream& os, const std::vector<cplx>& vals) {
  for (const cplx& v : vals) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

void read_values_bin(std::istream& is, std::vector<cplx>& vals) {
  for (cplx& v : vals) {
    double re = get_f64(is), im = get_f64(is);
    v = {re, im};
  }
}

void csv_header_common(std::ostream& os, int dim_n, double hbar, const std::string& label) {
  os << "# wigcert v1\n";
  os << "# dim_n=" << dim_n << "\n";
  os.precision(17);
  os << "# hbar=" << hbar << "\n";
  if (!label.empty()) os << "# label=" << label << "\n";
}

struct CsvHeader {
  int dim_n = 0;
  double hbar = 1.0;
  std::string label;
  std::vector<AxisSpec> axes;
};

CsvHeader parse_csv_header(std::istream& is, std::string& first_data_line) {
  CsvHeader h;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      first_data_line = line;
      break;
    }
    std::string body = line.substr(1);
    auto eat = [&](const char* key) -> const char* {
      std::size_t pos = body.find(key);
      return pos == std::string::npos ? nullptr : body.c_str() + pos + std::strlen(key);
    };
    if (const char* v = eat("dim_n=")) h.dim_n = std::atoi(v);
    else if (const char* v2 = eat("hbar=")) h.hbar = std::atof(v2);
    else if (const char* v3 = eat("label=")) h.label = v3;
    else if (const char* v4 = eat("axis=")) {
      AxisSpec a;
      if (std::sscanf(v4, "%d,%lf", &a.points, &a.half_extent) == 2) h.axes.push_back(a);
    }
  }
  if (h.dim_n <= 0) throw error("csv: missing or invalid dim_n header");
  return h;
}

void write_csv_values(std::ostream& os, const std::vector<int>& dims, const std::vector<cplx>& vals) {
  Shape sh(dims);
  os.precision(17);
  for (std::size_t a = 0; a < dims.size(); ++a) os << "i" << a << ",";
  os << "re,im\n";
  std::vector<int> idx;
  for (std::size_t f = 0; f < vals.size(); ++f) {
    sh.unflat(f, idx);
    for (int i : idx) os << i << ",";
    os << vals[f].real() << "," << vals[f].imag() << "\n";
  }
}

void read_csv_values(std::istream& is, std::string first_line, const std::vector<int>& dims,
                     std::vector<cplx>& vals) {
  Shape sh(dims);
  // first_line is the column header; data follows
  std::string line;
  std::vector<int> idx(dims.size());
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    bool ok = true;
    for (std::size_t a = 0; a < dims.size() && ok; ++a) {
      ok = static_cast<bool>(std::getline(ss, cell, ','));
      if (ok) idx[a] = std::atoi(cell.c_str());
    }
    if (!ok) throw error("csv: short row");
    double re = 0, im = 0;
    if (!std::getline(ss, cell, ',')) throw error("csv: missing re column");
    re = std::atof(cell.c_str());
    if (!std::getline(ss, cell, ',')) throw error("csv: missing im column");
    im = std::atof(cell.c_str());
    for (std::size_t a = 0; a < dims.size(); ++a)
      if (idx[a] < 0 || idx[a] >= dims[a]) throw error("csv: index out of range");
    vals[sh.flat(idx)] = {re, im};
  }
  (void)first_line;
}

}  // namespace

void write_field(const Field& F, const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ofstream os(path);
    if (!os) throw error("cannot open for writing: " + path);
    csv_header_common(os, F.grid.dim_n, F.grid.hbar, F.label);
    for (int a = 0; a < F.grid.num_axes(); ++a)
      os << "# axis=" << F.grid.axis(a).points << "," << F.grid.axis(a).half_extent << "\n";
    write_csv_values(os, F.grid.dims(), F.values);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open for writing: " + path);
  os.write(kFieldMagic, 8);
  put_u32(os, static_cast<std::uint32_t>(F.grid.dim_n));
  put_f64(os, F.grid.hbar);
  put_u32(os, static_cast<std::uint32_t>(F.label.size()));
  os.write(F.label.data(), static_cast<std::streamsize>(F.label.size()));
  write_axes_bin(os, F.grid.x_axes);
  write_axes_bin(os, F.grid.p_axes);
  write_values_bin(os, F.values);
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot open for reading: " + path);
  char magic[8];
  is.read(magic, 8);
  if (is && std::memcmp(magic, kFieldMagic, 8) == 0) {
    int dim_n = static_cast<int>(get_u32(is));
    double hbar = get_f64(is);
    std::uint32_t label_len = get_u32(is);
    std::string label(label_len, '\0');
    is.read(label.data(), label_len);
    auto xs = read_axes_bin(is, dim_n);
    auto ps = read_axes_bin(is, dim_n);
    Field F = make_field(make_grid(dim_n, xs, ps, hbar), label);
    read_values_bin(is, F.values);
    if (!is) throw error("field file truncated: " + path);
    return F;
  }
  // CSV fallback
  is.close();
  std::ifstream cs(path);
  if (!cs) throw error("cannot open for reading: " + path);
  std::string first;
  CsvHeader h = parse_csv_header(cs, first);
  if (static_cast<int>(h.axes.size()) != 2 * h.dim_n)
    throw error("csv: axis count does not match dim_n for a field");
  std::vector<AxisSpec> xs(h.axes.begin(), h.axes.begin() + h.dim_n);
  std::vector<AxisSpec> ps(h.axes.begin() + h.dim_n, h.axes.end());
  Field F = make_field(make_grid(h.dim_n, xs, ps, h.hbar), h.label);
  read_csv_values(cs, first, F.grid.dims(), F.values);
  return F;
}

void write_wavefunction(const WaveFunction& f, const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ofstream os(path);
    if (!os) throw error("cannot open for writing: " + path);
    csv_header_common(os, f.grid.dim_n, f.grid.hbar, "");
    for (const AxisSpec& a : f.grid.axes) os << "# axis=" << a.points << "," << a.half_extent << "\n";
    write_csv_values(os, f.grid.dims(), f.values);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open for writing: " + path);
  os.write(kWaveMagic, 8);
  put_u32(os, static_cast<std::uint32_t>(f.grid.dim_n));
  put_f64(os, f.grid.hbar);
  write_axes_bin(os, f.grid.axes);
  write_values_bin(os, f.values);
}

WaveFunction read_wavefunction(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot open for reading: " + path);
  char magic[8];
  is.read(magic, 8);
  if (is && std::memcmp(magic, kWaveMagic, 8) == 0) {
    int dim_n = static_cast<int>(get_u32(is));
    double hbar = get_f64(is);
    auto axes = read_axes_bin(is, dim_n);
    WaveFunction f = make_wavefunction(make_config_grid(dim_n, axes, hbar));
    read_values_bin(is, f.values);
    if (!is) throw error("wavefunction file truncated: " + path);
    return f;
  }
  is.close();
  std::ifstream cs(path);
  if (!cs) throw error("cannot open for reading: " + path);
  std::string first;
  CsvHeader h = parse_csv_header(cs, first);
  if (static_cast<int>(h.axes.size()) != h.dim_n)
    throw error("csv: axis count does not match dim_n for a wavefunction");
  WaveFunction f = make_wavefunction(make_config_grid(h.dim_n, h.axes, h.hbar));
  read_csv_values(cs, first, f.grid.dims(), f.values);
  return f;
}

}  // namespace wigcert
