#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unidec/cli.hpp"
#include "unidec/errors.hpp"

using namespace unidec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "unidec_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

int call(std::vector<std::string> args, std::string* out_text = nullptr,
         std::string* err_text = nullptr) {
  args.insert(args.begin(), "unidec");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST(Io, MatrixFormats) {
  const Matrix flat = matrix_from_json(Json::parse("[[1,0],[0,2],[3,0],[0,-1]]"));
  const Matrix rows = matrix_from_json(Json::parse("[[[1,0],[0,2]],[[3,0],[0,-1]]]"));
  const Matrix bare = matrix_from_json(Json::parse("[[1,0],[3,0]]"));
  EXPECT_EQ(flat(0, 1), Complex(0, 2));
  EXPECT_EQ(flat(1, 0), Complex(3, 0));
  EXPECT_EQ(flat, rows);
  EXPECT_EQ(bare(1, 0), Complex(3, 0));
  EXPECT_EQ(matrix_from_json(matrix_to_json(flat)), flat);
  EXPECT_THROW(matrix_from_json(Json::parse("[1,2,3]")), ConfigError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1,2],[3]]")), ConfigError);
  EXPECT_THROW(matrix_from_json(Json::parse("[\"a\"]")), ConfigError);
}

TEST(Io, ChannelsAndObservables) {
  const KrausChannel adc = channel_from_json(Json::parse(R"({"adc":{"gamma":2,"t":0.1,"lambda_th":0.5}})"));
  EXPECT_EQ(adc.size(), 4u);
  const KrausChannel id = channel_from_json(Json::parse(R"({"label":"id","kraus":[[1,0,0,1]]})"));
  EXPECT_EQ(id.label(), "id");
  EXPECT_EQ(id.op(0), Matrix::Identity(2, 2));
  EXPECT_THROW(channel_from_json(Json::parse("{}")), ConfigError);
  EXPECT_TRUE(observable_from_json("z", 2).involutory());
  EXPECT_EQ(observable_from_json("population:2", 3).matrix()(2, 2), Complex(1.0));
  EXPECT_THROW(observable_from_json("x", 3), ConfigError);
  EXPECT_THROW(observable_from_json("w", 2), ConfigError);
}

TEST(Io, CsvWriter) {
  CsvWriter w("meta", {"a", "b"});
  w.cell(0.1).cell(std::uint64_t{7});
  w.end_row();
  EXPECT_EQ(w.str(), "# meta\na,b\n0.10000000000000001,7\n");
  EXPECT_EQ(w.rows(), 1u);
  w.cell(1.0);
  EXPECT_THROW(w.end_row(), Error);
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(Config, UnknownAndInvalidFieldsAreNamed) {
  auto message = [](const char* text) {
    try {
      cli::config_from_json(Json::parse(text));
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"experiment":"decompose","shotz":3})").find("shotz"), std::string::npos);
  EXPECT_NE(message(R"({"experiment":"decompose","gamma":-1})").find("gamma"), std::string::npos);
  EXPECT_NE(message(R"({"experiment":"decompose","shots":"many"})").find("shots"), std::string::npos);
  EXPECT_NE(message(R"({"experiment":"nope"})").find("experiment"), std::string::npos);
  EXPECT_NE(message(R"({"experiment":"decompose","kraus_file":"/no/such/file"})").find("kraus_file"),
            std::string::npos);
  EXPECT_NE(message(R"({"experiment":"mse-sweep","trials":5})").find("trials"), std::string::npos);
  EXPECT_NE(message(R"({"experiment":"decompose","optimizer":{"methods":["bfgs"]}})").find("bfgs"),
            std::string::npos);
}

TEST(Config, RoundTrip) {
  const auto c = cli::config_from_json(Json::parse(R"({"experiment":"sqr-sweep","dims":[2,3],"seed":9})"));
  const auto again = cli::config_from_json(cli::config_to_json(c));
  EXPECT_EQ(cli::config_to_json(again), cli::config_to_json(c));
}

TEST(Cli, DecomposeIdentityFile) {
  const fs::path kraus = scratch("identity.json");
  std::ofstream(kraus) << R"({"kraus": [[[1,0],[0,0],[0,0],[1,0]]]})";
  std::string out;
  ASSERT_EQ(call({"decompose", "--kraus-file", kraus.string()}, &out), 0);
  std::istringstream lines(out);
  std::string meta, header, row, extra;
  std::getline(lines, meta);
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(meta.rfind("# unidec version=", 0), 0u);
  EXPECT_NE(meta.find("seed=0"), std::string::npos);
  EXPECT_NE(meta.find("config_hash="), std::string::npos);
  EXPECT_EQ(header, "kraus,kind,term,c_re,c_im,mu,generator_l1,generator_sqr,reconstruction_error");
  EXPECT_EQ(row.substr(0, 8), "0,S,0,1,");
  EXPECT_NE(row.find(",1,1,"), std::string::npos);
}

TEST(Cli, SimulateAdcColumnsAndOracle) {
  cli::ExperimentConfig c = cli::config_from_json(Json::parse(R"({"experiment":"simulate-adc","seed":4})"));
  const auto result = cli::execute(c);
  std::istringstream lines(result.csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("t,p0_exact,p1_exact,p0_est,p1_est,L,predicted_sigma", 0), 0u);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string t, p0, p1;
    std::getline(cells, t, ',');
    std::getline(cells, p0, ',');
    std::getline(cells, p1, ',');
    EXPECT_NEAR(std::stod(p1), 0.75 * std::exp(-1.52e9 * std::stod(t)), 1e-10);
    ++rows;
  }
  EXPECT_EQ(rows, 30);
  EXPECT_EQ(result.manifest.at("summary").at("time_points"), 30);
}

TEST(Cli, ExecuteIsDeterministic) {
  for (const char* text : {R"({"experiment":"simulate-adc","seed":11,"time_points":5})",
                           R"({"experiment":"mse-sweep","seed":2,"shot_grid":[100,1000],"trials":30})",
                           R"({"experiment":"sqr-sweep","seed":2,"dims":[2,3],"samples":3})",
                           R"({"experiment":"decompose","t":1e-10})"}) {
    const auto c = cli::config_from_json(Json::parse(text));
    EXPECT_EQ(cli::execute(c).csv, cli::execute(c).csv) << text;
  }
  const auto a = cli::config_from_json(Json::parse(R"({"experiment":"simulate-adc","seed":1,"time_points":4})"));
  const auto b = cli::config_from_json(Json::parse(R"({"experiment":"simulate-adc","seed":2,"time_points":4})"));
  EXPECT_NE(cli::execute(a).csv, cli::execute(b).csv);
}

TEST(Cli, WritesCsvAndManifest) {
  const fs::path out = scratch("sim.csv");
  fs::remove(out.string() + ".manifest.json");
  ASSERT_EQ(call({"simulate-adc", "--out", out.string(), "--time-points", "3", "--seed", "8"}), 0);
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("# unidec", 0), 0u);
  const Json manifest = Json::parse(slurp(out.string() + ".manifest.json"));
  EXPECT_EQ(manifest.at("seed"), 8);
  EXPECT_EQ(manifest.at("config").at("time_points"), 3);
  EXPECT_TRUE(manifest.contains("summary"));
}

TEST(Cli, ConfigFileAndOverrides) {
  const fs::path cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"experiment":"simulate-adc","time_points":2,"seed":1})";
  std::string from_file, overridden;
  ASSERT_EQ(call({"simulate-adc", "--config", cfg.string()}, &from_file), 0);
  ASSERT_EQ(call({"simulate-adc", "--config", cfg.string(), "--seed", "2"}, &overridden), 0);
  EXPECT_NE(from_file, overridden);
  EXPECT_NE(overridden.find("seed=2"), std::string::npos);
  std::string err;
  EXPECT_NE(call({"decompose", "--config", cfg.string()}, nullptr, &err), 0);
  EXPECT_NE(err.find("experiment"), std::string::npos);
}

TEST(Cli, ErrorsGiveNonzeroExit) {
  std::string err;
  EXPECT_NE(call({"simulate-adc", "--lambda-th", "2"}, nullptr, &err), 0);
  EXPECT_NE(err.find("lambda_th"), std::string::npos);
  EXPECT_NE(call({"decompose", "--kraus-file", "/no/such.json"}, nullptr, &err), 0);
  EXPECT_NE(call({}, nullptr, &err), 0);
  EXPECT_NE(call({"simulate-adc", "--out", "/no/such/dir/x.csv"}, nullptr, &err), 0);
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << R"({"kraus": [[2,0,0,2]]})";
  EXPECT_EQ(call({"decompose", "--kraus-file", bad.string()}), 0);  // not CPTP, still decomposable
}

TEST(Cli, ShippedConfigsParse) {
  for (const auto& entry : fs::directory_iterator(fs::path(UNIDEC_SOURCE_DIR) / "configs")) {
    const Json j = read_json_file(entry.path().string());
    if (!j.contains("experiment")) continue;  // Kraus files
    Json resolved = j;
    if (resolved.contains("kraus_file")) {
      resolved["kraus_file"] = (fs::path(UNIDEC_SOURCE_DIR) / resolved["kraus_file"].get<std::string>()).string();
    }
    EXPECT_NO_THROW(cli::config_from_json(resolved)) << entry.path();
  }
}

TEST(Cli, BinaryRunsAreByteIdentical) {
  const fs::path a = scratch("run_a.csv"), b = scratch("run_b.csv");
  const std::string base = std::string(UNIDEC_BINARY) + " mse-sweep --seed 5 --trials 30 --shot-grid 100 1000 --out ";
  ASSERT_EQ(std::system((base + a.string()).c_str()), 0);
  ASSERT_EQ(std::system((base + b.string() + " --threads 2").c_str()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}
