// Command-line front end for the speclab shared library. Everything goes
// through the C API so the binary exercises the same surface other language
// bindings would use.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speclab.h"

namespace {

struct GraphHandle {
  speclab_graph* g = nullptr;
  ~GraphHandle() { speclab_graph_free(g); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { speclab_string_free(s); }
};

int report_api_error(int rc) {
  std::fprintf(stderr, "error (%s): %s\n", speclab_status_name(rc), speclab_last_error());
  return 1;
}

int emit(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::FILE* fp = std::fopen(out_path.c_str(), "wb");
  if (!fp) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", out_path.c_str());
    return 1;
  }
  std::fputs(text, fp);
  std::fclose(fp);
  return 0;
}

int load_graph(const std::string& model, GraphHandle& gh) {
  const int rc = speclab_graph_from_model_string(model.c_str(), &gh.g);
  return rc == SPECLAB_OK ? 0 : report_api_error(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral gaps, Cheeger cuts, and concentration reports"};
  app.require_subcommand(1);

  const std::string model_help =
      "model string: circle:a=<v>,n=<int> | torus:dim=<d>,a=<v>,counts=AxB | "
      "torus:dim=<d>,a=<v>,ppu=<v> | a graph file path";
  const auto format_check = CLI::IsMember({"json", "csv"});
  const auto method_check = CLI::IsMember({"dense", "iterative", "auto"});

  std::string sp_model, sp_method = "auto", sp_format = "json", sp_out;
  int sp_k = 6;
  auto* sp = app.add_subcommand("spectrum", "eigenvalues and the eigenvalue ratio check");
  sp->add_option("--model", sp_model, model_help)->required();
  sp->add_option("--k", sp_k, "largest eigenvalue index")->check(CLI::PositiveNumber);
  sp->add_option("--method", sp_method, "solver")->check(method_check);
  sp->add_option("--format", sp_format, "output format")->check(format_check);
  sp->add_option("--out", sp_out, "write output to this file");

  std::string ch_model, ch_method = "auto", ch_format = "json", ch_out;
  auto* ch = app.add_subcommand("cheeger", "sweep cut from the first eigenfunction");
  ch->add_option("--model", ch_model, model_help)->required();
  ch->add_option("--method", ch_method, "solver")->check(method_check);
  ch->add_option("--format", ch_format, "output format")->check(format_check);
  ch->add_option("--out", ch_out, "write output to this file");

  std::string ic_model, ic_method = "auto", ic_format = "json", ic_out;
  int ic_k = 1;
  auto* ic = app.add_subcommand("improved-cheeger",
                                "functional Cheeger certificate at eigenvalue index k");
  ic->add_option("--model", ic_model, model_help)->required();
  ic->add_option("--k", ic_k, "eigenvalue index")->check(CLI::PositiveNumber);
  ic->add_option("--method", ic_method, "solver")->check(method_check);
  ic->add_option("--format", ic_format, "output format")->check(format_check);
  ic->add_option("--out", ic_out, "write output to this file");

  std::string mw_model, mw_method = "auto", mw_format = "json", mw_out;
  int mw_k = 2, mw_exact_cap = 12;
  auto* mw = app.add_subcommand("multiway", "k+1-way partition and its functional certificate");
  mw->add_option("--model", mw_model, model_help)->required();
  mw->add_option("--k", mw_k, "number of parts minus one")->check(CLI::PositiveNumber);
  mw->add_option("--exact-cap", mw_exact_cap,
                 "use exhaustive partitioning up to this many vertices");
  mw->add_option("--method", mw_method, "solver")->check(method_check);
  mw->add_option("--format", mw_format, "output format")->check(format_check);
  mw->add_option("--out", mw_out, "write output to this file");

  std::string od_model, od_method = "auto", od_format = "json", od_out;
  int od_k = 1;
  double od_kappa = 0.1;
  auto* od = app.add_subcommand("obsdiam", "observable diameter against the spectral bound");
  od->add_option("--model", od_model, model_help)->required();
  od->add_option("--kappa", od_kappa, "mass parameter in (0,1)");
  od->add_option("--k", od_k, "largest eigenvalue index")->check(CLI::PositiveNumber);
  od->add_option("--method", od_method, "solver")->check(method_check);
  od->add_option("--format", od_format, "output format")->check(format_check);
  od->add_option("--out", od_out, "write output to this file");

  std::vector<int> rs_dims;
  std::vector<double> rs_a;
  std::string rs_format = "json", rs_out;
  auto* rs = app.add_subcommand("ratio-scan", "separation witnesses across thin tori");
  rs->add_option("--dims", rs_dims, "dimensions to scan (default 2 3)");
  rs->add_option("--a-values", rs_a, "aspect values in (0,1) (default 0.1..0.9)");
  rs->add_option("--format", rs_format, "output format")->check(format_check);
  rs->add_option("--out", rs_out, "write output to this file");

  std::string va_config, va_out;
  auto* va = app.add_subcommand("verify-all", "run the full check suite for a config file");
  va->add_option("--config", va_config, "JSON experiment config")->required();
  va->add_option("--out", va_out, "output directory (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  if (*sp) {
    GraphHandle gh;
    if (load_graph(sp_model, gh)) return 1;
    StringHandle text;
    const int rc =
        speclab_spectrum_report(gh.g, sp_k, sp_method.c_str(), sp_format.c_str(), &text.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    return emit(text.s, sp_out);
  }

  if (*ch) {
    GraphHandle gh;
    if (load_graph(ch_model, gh)) return 1;
    StringHandle text;
    const int rc = speclab_cheeger_report(gh.g, ch_method.c_str(), ch_format.c_str(), &text.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    return emit(text.s, ch_out);
  }

  if (*ic) {
    GraphHandle gh;
    if (load_graph(ic_model, gh)) return 1;
    StringHandle text;
    const int rc = speclab_improved_cheeger_report(gh.g, ic_k, ic_method.c_str(),
                                                   ic_format.c_str(), &text.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    return emit(text.s, ic_out);
  }

  if (*mw) {
    GraphHandle gh;
    if (load_graph(mw_model, gh)) return 1;
    StringHandle text;
    const int rc = speclab_multiway_report(gh.g, mw_k, mw_method.c_str(), mw_exact_cap,
                                           mw_format.c_str(), &text.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    return emit(text.s, mw_out);
  }

  if (*od) {
    GraphHandle gh;
    if (load_graph(od_model, gh)) return 1;
    StringHandle text;
    const int rc = speclab_obsdiam_report(gh.g, od_kappa, od_k, od_method.c_str(),
                                          od_format.c_str(), &text.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    return emit(text.s, od_out);
  }

  if (*rs) {
    StringHandle text;
    const int rc = speclab_ratio_scan_report(
        rs_dims.empty() ? nullptr : rs_dims.data(), static_cast<int>(rs_dims.size()),
        rs_a.empty() ? nullptr : rs_a.data(), static_cast<int>(rs_a.size()), rs_format.c_str(),
        &text.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    return emit(text.s, rs_out);
  }

  if (*va) {
    int failing = 0;
    StringHandle csv;
    const int rc = speclab_run_suite(va_config.c_str(), va_out.empty() ? nullptr : va_out.c_str(),
                                     &failing, &csv.s);
    if (rc != SPECLAB_OK) return report_api_error(rc);
    std::fputs(csv.s, stdout);
    if (failing != 0) {
      std::fprintf(stderr, "%d failing rows\n", failing);
      return 2;
    }
    return 0;
  }

  return 1;
}
