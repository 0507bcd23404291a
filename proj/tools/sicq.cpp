// sicq command-line front end. Everything numeric goes through the C API.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sicq/sicq.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSkipped = 3;

// Thrown to unwind with a specific exit status after a message was printed.
struct Exit {
  int code;
};

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "sicq: " << message << "\n";
  throw Exit{code};
}

int exit_code_for(sicq_status s) {
  switch (s) {
    case SICQ_OK:
      return kExitOk;
    case SICQ_ERR_ARGUMENT:
    case SICQ_ERR_PARSE:
    case SICQ_ERR_UNSUPPORTED:
      return kExitUsage;
    default:
      return kExitFailed;
  }
}

void check(sicq_status s, const std::string& context = {}) {
  if (s == SICQ_OK) return;
  std::string msg = sicq_last_error();
  if (s == SICQ_ERR_PARSE) msg += " (byte offset " + std::to_string(sicq_last_error_offset()) + ")";
  die(exit_code_for(s), context.empty() ? msg : context + ": " + msg);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Frame = std::unique_ptr<sicq_frame, Deleter<sicq_frame, sicq_frame_free>>;
using Operator = std::unique_ptr<sicq_operator, Deleter<sicq_operator, sicq_operator_free>>;
using PovmHandle = std::unique_ptr<sicq_povm, Deleter<sicq_povm, sicq_povm_free>>;
using Mub = std::unique_ptr<sicq_mub, Deleter<sicq_mub, sicq_mub_free>>;

// Takes ownership of a string returned by the library and parses it.
Json take_json(char* raw) {
  std::unique_ptr<char, void (*)(char*)> owned(raw, sicq_string_free);
  return Json::parse(owned.get());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitUsage, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Malformed input is a usage error naming the file and byte offset.
Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    die(kExitUsage, path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Frame load_frame(const std::string& path) {
  const std::string text = read_text(path);
  sicq_frame* raw = nullptr;
  const sicq_status s = sicq_frame_from_json(text.c_str(), &raw);
  if (s == SICQ_ERR_PARSE) {
    die(kExitUsage, path + ": malformed JSON at byte " + std::to_string(sicq_last_error_offset()));
  }
  check(s, path);
  return Frame(raw);
}

Operator load_operator(const std::string& path) {
  const std::string text = read_text(path);
  sicq_operator* raw = nullptr;
  const sicq_status s = sicq_operator_from_json(text.c_str(), &raw);
  if (s == SICQ_ERR_PARSE) {
    die(kExitUsage, path + ": malformed JSON at byte " + std::to_string(sicq_last_error_offset()));
  }
  check(s, path);
  return Operator(raw);
}

PovmHandle load_povm(const std::string& path, double tol) {
  const std::string text = read_text(path);
  sicq_povm* raw = nullptr;
  const sicq_status s = sicq_povm_from_json(text.c_str(), tol, &raw);
  if (s == SICQ_ERR_PARSE) {
    die(kExitUsage, path + ": malformed JSON at byte " + std::to_string(sicq_last_error_offset()));
  }
  check(s, path);
  return PovmHandle(raw);
}

std::vector<double> load_prob(const std::string& path) {
  const Json j = read_json(path);
  if (!j.is_object() || !j.contains("p") || !j["p"].is_array()) die(kExitFailed, path + ": needs an array \"p\"");
  std::vector<double> p;
  for (const auto& x : j["p"]) {
    if (!x.is_number()) die(kExitFailed, path + ": probabilities must be numbers");
    p.push_back(x.get<double>());
  }
  return p;
}

// Frame for commands that only need some SIC in dimension d.
Frame default_frame(std::size_t dim, unsigned threads) {
  sicq_frame* raw = nullptr;
  if (dim <= 3) {
    check(sicq_frame_known(dim, &raw));
  } else {
    std::vector<std::uint64_t> seeds(64);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    check(sicq_frame_search(dim, seeds.data(), seeds.size(), 5000, 1e-8, SICQ_SEARCH_EXACT, threads, &raw));
  }
  return Frame(raw);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  const std::string s = v.dump();
  if (!v.is_array() && !v.is_object()) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

std::string to_csv(const Json& doc) {
  std::ostringstream out;
  const Json& h = doc["header"];
  for (auto it = h.begin(); it != h.end(); ++it) out << "# " << it.key() << "=" << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  auto table = [&](const Json& rows) {
    std::vector<std::string> keys;
    for (const auto& row : rows) {
      for (auto it = row.begin(); it != row.end(); ++it) {
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
      }
    }
    for (std::size_t k = 0; k < keys.size(); ++k) out << (k ? "," : "") << keys[k];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < keys.size(); ++k) {
        out << (k ? "," : "") << (row.contains(keys[k]) ? csv_cell(row[keys[k]]) : "");
      }
      out << "\n";
    }
  };
  if (doc.contains("rows") && doc["rows"].is_array()) {
    table(doc["rows"]);
  } else if (doc.contains("p") || doc.contains("q")) {
    Json rows = Json::array();
    const char* cols[] = {"p", "q", "oracle"};
    const std::size_t n = doc.contains("p") ? doc["p"].size() : doc["q"].size();
    for (std::size_t i = 0; i < n; ++i) {
      Json row = {{"index", i}};
      for (const char* c : cols) {
        if (doc.contains(c)) row[c] = doc[c][i];
      }
      rows.push_back(row);
    }
    table(rows);
  } else {
    out << "key,value\n";
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.key() != "header") out << it.key() << "," << csv_cell(it.value()) << "\n";
    }
  }
  return out.str();
}

struct Config {
  std::string format;
  std::string out;
  double tol = 1e-9;
  unsigned threads = 0;
  std::optional<std::size_t> dim;
  std::vector<std::uint64_t> seeds;
  std::string command;
};

Json header(const Config& cfg) {
  return {{"tool", "sicq"},
          {"version", sicq_version()},
          {"command", cfg.command},
          {"dim", cfg.dim ? Json(*cfg.dim) : Json(nullptr)},
          {"seeds", cfg.seeds},
          {"tolerances", {{"default", cfg.tol}, {"exact", 1e-12}, {"urungleichung_slack", 1e-8}}}};
}

void write_doc(const Config& cfg, Json doc, const std::string& default_format = "json") {
  doc["header"] = header(cfg);
  const std::string format = cfg.format.empty() ? default_format : cfg.format;
  const std::string text = format == "csv" ? to_csv(doc) : doc.dump() + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) die(kExitUsage, "cannot write " + cfg.out);
  f << text;
}

Json prob_doc(const std::vector<double>& p) { return {{"n", p.size()}, {"p", p}}; }

double default_tol() {
  if (const char* env = std::getenv("SICQ_DEFAULT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    die(kExitUsage, "SICQ_DEFAULT_TOL must be a positive number");
  }
  return 1e-9;
}

int run(int argc, char** argv) {
  CLI::App app{"SIC-POVM representation of finite-dimensional quantum mechanics"};
  app.set_version_flag("--version", std::string(sicq_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  cfg.tol = default_tol();
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", cfg.tol, "validity tolerance (SICQ_DEFAULT_TOL, else 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "worker threads, 0 = hardware");
  app.add_option("-o,--out", cfg.out, "write the document here instead of stdout");
  std::function<int()> action;

  std::size_t dim = 0;
  std::string sic_path, state_path, prob_path, povm_path, unitary_path, frame_path;

  auto* sic = app.add_subcommand("sic", "build or verify SIC frames");
  sic->require_subcommand(1);
  auto* sic_build = sic->add_subcommand("build", "search for (or construct) a SIC frame");
  std::vector<std::uint64_t> seeds{0};
  std::size_t max_iters = 5000;
  double residual = 1e-8;
  std::string mode = "exact";
  bool analytic = false;
  sic_build->add_option("--dim", dim)->required();
  sic_build->add_option("--seeds", seeds)->delimiter(',');
  sic_build->add_option("--max-iters", max_iters);
  sic_build->add_option("--residual", residual)->check(CLI::PositiveNumber);
  sic_build->add_option("--mode", mode)->check(CLI::IsMember({"exact", "wh"}));
  sic_build->add_flag("--analytic", analytic, "closed-form frame (d = 2, 3)");
  sic_build->callback([&] {
    action = [&] {
      cfg.dim = dim;
      sicq_frame* raw = nullptr;
      if (analytic) {
        check(sicq_frame_known(dim, &raw));
      } else {
        cfg.seeds = seeds;
        const sicq_status s = sicq_frame_search(dim, seeds.data(), seeds.size(), max_iters, residual,
                                                mode == "wh" ? SICQ_SEARCH_WEYL_HEISENBERG : SICQ_SEARCH_EXACT,
                                                cfg.threads, &raw);
        if (s == SICQ_ERR_SEARCH_FAILED) {
          die(kExitFailed, std::string(sicq_last_error()) + " (best residual " +
                               format_double(sicq_last_search_residual()) + ")");
        }
        check(s);
      }
      Frame frame(raw);
      char* json = nullptr;
      check(sicq_frame_to_json(frame.get(), &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });

  auto* sic_verify = sic->add_subcommand("verify", "check a frame file against the SIC invariants");
  std::optional<double> verify_tol;
  sic_verify->add_option("path", sic_path)->required();
  sic_verify->add_option("--tol", verify_tol)->check(CLI::PositiveNumber);
  sic_verify->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      cfg.dim = sicq_frame_dim(frame.get());
      if (verify_tol) cfg.tol = *verify_tol;
      const double tol = verify_tol ? *verify_tol : std::max(cfg.tol, sicq_frame_working_tolerance(frame.get()));
      char* json = nullptr;
      int pass = 0;
      check(sicq_frame_verify(frame.get(), tol, &json, &pass));
      write_doc(cfg, take_json(json));
      return pass ? kExitOk : kExitFailed;
    };
  });

  auto* mub = app.add_subcommand("mub", "mutually unbiased bases");
  mub->require_subcommand(1);
  auto* mub_build = mub->add_subcommand("build", "complete MUB set for prime d");
  mub_build->add_option("--dim", dim)->required();
  mub_build->callback([&] {
    action = [&] {
      cfg.dim = dim;
      sicq_mub* raw = nullptr;
      check(sicq_mub_build(dim, &raw));
      Mub handle(raw);
      char* json = nullptr;
      check(sicq_mub_to_json(handle.get(), &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });

  auto* real = app.add_subcommand("real-feasibility", "minimal IC equiangular sets over the reals");
  real->add_option("--dim", dim)->required();
  real->callback([&] {
    action = [&] {
      cfg.dim = dim;
      char* json = nullptr;
      check(sicq_real_feasibility(dim, &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });

  auto* state = app.add_subcommand("state", "state and probability conversions");
  state->require_subcommand(1);
  auto* to_prob = state->add_subcommand("to-prob", "density operator to SIC probabilities");
  to_prob->add_option("--sic", sic_path)->required();
  to_prob->add_option("--state", state_path)->required();
  to_prob->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      Operator rho = load_operator(state_path);
      const std::size_t d = sicq_frame_dim(frame.get());
      cfg.dim = d;
      std::vector<double> p(d * d);
      check(sicq_state_to_prob(frame.get(), rho.get(), cfg.tol, p.data(), p.size()));
      write_doc(cfg, prob_doc(p));
      return kExitOk;
    };
  });
  auto* to_rho = state->add_subcommand("to-rho", "SIC probabilities to operator");
  to_rho->add_option("--sic", sic_path)->required();
  to_rho->add_option("--prob", prob_path)->required();
  to_rho->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      const std::vector<double> p = load_prob(prob_path);
      cfg.dim = sicq_frame_dim(frame.get());
      char* json = nullptr;
      check(sicq_prob_to_rho(frame.get(), p.data(), p.size(), cfg.tol, &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });
  auto* validate = state->add_subcommand("validate", "does p come from a density operator");
  validate->add_option("--sic", sic_path)->required();
  validate->add_option("--prob", prob_path)->required();
  validate->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      const std::vector<double> p = load_prob(prob_path);
      cfg.dim = sicq_frame_dim(frame.get());
      char* json = nullptr;
      int valid = 0;
      check(sicq_state_validate(frame.get(), p.data(), p.size(), cfg.tol, &json, &valid));
      write_doc(cfg, take_json(json));
      return valid ? kExitOk : kExitFailed;
    };
  });
  auto* purity = state->add_subcommand("purity", "quadratic, cubic and fixed-point purity residuals");
  purity->add_option("--sic", sic_path)->required();
  purity->add_option("--prob", prob_path)->required();
  purity->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      const std::vector<double> p = load_prob(prob_path);
      cfg.dim = sicq_frame_dim(frame.get());
      char* json = nullptr;
      check(sicq_state_purity(frame.get(), p.data(), p.size(), cfg.tol, &json, nullptr));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });

  auto* born = app.add_subcommand("born", "outcome probabilities from the SIC representation");
  bool compare = false;
  born->add_option("--sic", sic_path)->required();
  born->add_option("--state", state_path)->required();
  born->add_option("--povm", povm_path)->required();
  born->add_flag("--compare", compare, "also report the direct trace values");
  born->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      Operator rho = load_operator(state_path);
      PovmHandle povm = load_povm(povm_path, cfg.tol);
      cfg.dim = sicq_frame_dim(frame.get());
      char* json = nullptr;
      check(sicq_born(frame.get(), rho.get(), povm.get(), cfg.tol, compare ? 1 : 0, &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });

  auto* evolve = app.add_subcommand("evolve", "unitary evolution of SIC probabilities");
  evolve->add_option("--sic", sic_path)->required();
  evolve->add_option("--unitary", unitary_path)->required();
  evolve->add_option("--prob", prob_path)->required();
  evolve->callback([&] {
    action = [&] {
      Frame frame = load_frame(sic_path);
      Operator u = load_operator(unitary_path);
      const std::vector<double> p = load_prob(prob_path);
      const std::size_t d = sicq_frame_dim(frame.get());
      cfg.dim = d;
      std::vector<double> q(d * d);
      check(sicq_evolve(frame.get(), u.get(), p.data(), p.size(), cfg.tol, q.data(), q.size()));
      write_doc(cfg, prob_doc(q));
      return kExitOk;
    };
  });

  auto* geometry = app.add_subcommand("geometry", "state-space geometry");
  geometry->require_subcommand(1);
  auto* report = geometry->add_subcommand("report", "sphere radius, zeros and equidistance limits");
  report->add_option("--dim", dim)->required();
  report->callback([&] {
    action = [&] {
      cfg.dim = dim;
      char* json = nullptr;
      check(sicq_geometry_report(dim, &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });
  auto* sweep = geometry->add_subcommand("sweep", "statistics of random pure states (CSV)");
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  sweep->add_option("--dim", dim)->required();
  sweep->add_option("--samples", samples);
  sweep->add_option("--seed", seed);
  sweep->add_option("--sic", frame_path, "frame file; default analytic (d <= 3) or searched");
  sweep->callback([&] {
    action = [&] {
      cfg.dim = dim;
      cfg.seeds = {seed};
      Frame frame = frame_path.empty() ? default_frame(dim, cfg.threads) : load_frame(frame_path);
      if (sicq_frame_dim(frame.get()) != dim) die(kExitUsage, "frame dimension differs from --dim");
      char* json = nullptr;
      check(sicq_geometry_sweep(frame.get(), samples, seed, cfg.threads, &json));
      write_doc(cfg, take_json(json), "csv");
      return kExitOk;
    };
  });

  auto* solve = app.add_subcommand("solve-general", "exact solution of the generalized parameters");
  std::int64_t m = 0;
  solve->add_option("--m", m)->required();
  solve->callback([&] {
    action = [&] {
      char* json = nullptr;
      check(sicq_solve_general(m, &json));
      write_doc(cfg, take_json(json));
      return kExitOk;
    };
  });

  auto* selfcheck = app.add_subcommand("selfcheck", "run every invariant suite");
  std::vector<std::size_t> dims{2, 3};
  std::uint64_t check_seed = 0;
  selfcheck->add_option("--dims", dims)->delimiter(',');
  selfcheck->add_option("--seed", check_seed);
  selfcheck->add_option("--frame", frame_path, "use this frame for its dimension");
  selfcheck->callback([&] {
    action = [&] {
      cfg.seeds = {check_seed};
      std::string frame_json;
      if (!frame_path.empty()) {
        frame_json = read_text(frame_path);
        read_json(frame_path);
      }
      char* json = nullptr;
      int overall = SICQ_CHECK_FAIL;
      check(sicq_selfcheck(dims.data(), dims.size(), frame_path.empty() ? nullptr : frame_json.c_str(), check_seed,
                           cfg.threads, &json, &overall));
      Json doc = take_json(json);
      doc["dims"] = dims;
      write_doc(cfg, std::move(doc));
      if (overall == SICQ_CHECK_FAIL) return kExitFailed;
      return overall == SICQ_CHECK_SKIP ? kExitSkipped : kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    cfg.command += (cfg.command.empty() ? "" : " ") + sub->get_name();
  }
  return action ? action() : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "sicq: " << e.what() << "\n";
    return kExitFailed;
  }
}
