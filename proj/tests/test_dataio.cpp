#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "unitdist/dataio.hpp"

using namespace unitdist;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = std::string("unitdist_io_test_") + std::to_string(counter++) + ".txt";
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("builtin dataset matches its published summary") {
  const auto data = builtin_dataset("oecd-water");
  REQUIRE(data.size() == 41);
  CHECK(data.values().front() == doctest::Approx(0.92));
  CHECK(data.values().back() == doctest::Approx(0.72));
  double mean = 0.0;
  for (double v : data.values()) mean += v;
  mean /= 41.0;
  CHECK(std::fabs(mean - 0.8332) <= 5e-5);

  const auto note = builtin_dataset_note("oecd-water");
  CHECK(note.find("0.062") != std::string::npos);
  CHECK(note.find("OECD") != std::string::npos);

  CHECK_THROWS_AS(builtin_dataset("nope"), std::invalid_argument);
  try {
    builtin_dataset("nope");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("oecd-water") != std::string::npos);
  }
}

TEST_CASE("file parsing: plain lines, CRLF, headers, blank lines") {
  {
    TempFile f("0.5\n0.25\n");
    const auto data = load({DataSource::Kind::file, f.path});
    REQUIRE(data.size() == 2);
    CHECK(data.values()[0] == 0.5);  // order preserved
    CHECK(data.values()[1] == 0.25);
  }
  {
    TempFile f("value\r\n0.5\r\n\r\n  0.25  \r\n");
    const auto data = load({DataSource::Kind::file, f.path});
    REQUIRE(data.size() == 2);
    CHECK(data.values()[0] == 0.5);
  }
}

TEST_CASE("file parsing errors carry line numbers") {
  {
    TempFile f("1.2\n");
    try {
      load({DataSource::Kind::file, f.path});
      FAIL("expected a range error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
      CHECK(std::string(e.what()).find("1.2") != std::string::npos);
    }
  }
  {
    TempFile f("0.5\nabc\n");
    try {
      load({DataSource::Kind::file, f.path});
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
      CHECK(std::string(e.what()).find("abc") != std::string::npos);
    }
  }
  {
    TempFile f("\n\n");
    CHECK_THROWS_AS(load({DataSource::Kind::file, f.path}), std::runtime_error);
  }
  CHECK_THROWS_AS(load({DataSource::Kind::file, "definitely_missing_file.csv"}),
                  std::runtime_error);
}

TEST_CASE("inline lists parse with positions") {
  const auto data = load({DataSource::Kind::inline_list, "0.5, 0.25 ,0.75"});
  REQUIRE(data.size() == 3);
  CHECK(data.values()[1] == 0.25);
  CHECK_THROWS_AS(load({DataSource::Kind::inline_list, "0.5,oops"}), std::runtime_error);
  CHECK_THROWS_AS(load({DataSource::Kind::inline_list, "0.5,1.5"}), std::runtime_error);
}

TEST_CASE("csv export of a dataset round-trips exactly") {
  const auto data = builtin_dataset("oecd-water");
  const auto csv = export_dataset_csv(data);
  std::istringstream in(csv);
  const auto back = load_stream(in, "roundtrip");
  REQUIRE(back.size() == data.size());
  for (std::size_t k = 0; k < data.size(); ++k)
    CHECK(back.values()[k] == data.values()[k]);  // bitwise
}

TEST_CASE("report rendering in all three formats") {
  const auto data = builtin_dataset("oecd-water");

  ReportEntry f5;
  f5.label = "fatima5";
  f5.fit = fit(Family::fatima5, data);
  f5.gof = gof_report(*f5.fit, data);

  ReportEntry f1;
  f1.label = "fatima1";
  f1.fit = fit(Family::fatima1, data);
  f1.gof = gof_report(*f1.fit, data);

  const auto text = export_report({f5, f1}, ReportFormat::text_table);
  CHECK(text.find("LL") != std::string::npos);
  CHECK(text.find("AIC") != std::string::npos);
  CHECK(text.find("KS-test") != std::string::npos);
  CHECK(text.find("40.4976") != std::string::npos);
  CHECK(text.find("Fail to reject") != std::string::npos);
  CHECK(text.find("fatima5") != std::string::npos);
  CHECK(text.find("fatima1") != std::string::npos);
  CHECK(text.find("n/a") != std::string::npos);  // fatima1 has no vcov

  const auto js = nlohmann::json::parse(export_report({f5, f1}, ReportFormat::json));
  CHECK(js["schema_version"] == 1);
  REQUIRE(js["reports"].size() == 2);
  CHECK(js["reports"][0]["family"] == "fatima5");
  CHECK_FALSE(js["reports"][0]["vcov"].is_null());
  CHECK(js["reports"][1]["vcov"].is_null());
  CHECK(js["reports"][1]["identifiability_flag"] == true);
  CHECK(js["reports"][0]["ho"] == "Fail to reject");

  const auto csv = export_report({f5, f1}, ReportFormat::csv);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "row,fatima5,fatima1");
  bool saw_ll = false;
  std::string line;
  while (std::getline(lines, line))
    if (line.rfind("LL,", 0) == 0) saw_ll = true;
  CHECK(saw_ll);

  ReportEntry failed;
  failed.label = "broken";
  failed.error = "did not converge";
  const auto with_error = export_report({f5, failed}, ReportFormat::text_table);
  CHECK(with_error.find("did not converge") != std::string::npos);

  CHECK_THROWS_AS(export_report({}, ReportFormat::json), std::invalid_argument);
}
