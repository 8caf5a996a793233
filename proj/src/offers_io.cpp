#include "rap/offers_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rap {

namespace {

std::string num(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
  }
  return fields;
}

double parse_field(const std::string& text, const std::string& what,
                   const std::string& origin, int line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": bad " +
                             what + " value '" + text + "'");
  }
}

OfferBook read_offers_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  const nlohmann::json& arr = j.is_object() && j.contains("offers") ? j["offers"] : j;
  if (!arr.is_array()) {
    throw std::runtime_error(path + ": expected a JSON array of offers");
  }
  std::vector<Offer> offers;
  for (const auto& o : arr) {
    Offer offer;
    offer.id = o.at("id").get<std::string>();
    offer.volume_mw = o.at("volume_mw").get<double>();
    offer.reliability = o.at("reliability").get<double>();
    offer.price_per_mw = o.at("price_per_mw").get<double>();
    if (o.contains("source")) offer.source = o["source"].get<std::string>();
    offers.push_back(std::move(offer));
  }
  if (offers.empty()) throw std::runtime_error(path + ": no offers");
  try {
    return OfferBook(std::move(offers));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace

OfferBook read_offers_csv(std::istream& is, const std::string& origin) {
  std::string line;
  int line_no = 0;
  bool have_source = false;
  if (!std::getline(is, line)) throw std::runtime_error(origin + ": no offers");
  ++line_no;
  {
    auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "id" || header[1] != "volume_mw" ||
        header[2] != "reliability" || header[3] != "price_per_mw") {
      throw std::runtime_error(
          origin + ":1: expected header id,volume_mw,reliability,price_per_mw[,source]");
    }
    if (header.size() == 5 && header[4] == "source") {
      have_source = true;
    } else if (header.size() > 4) {
      throw std::runtime_error(origin + ":1: unexpected extra columns");
    }
  }

  std::vector<Offer> offers;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    std::size_t expected = have_source ? 5 : 4;
    if (fields.size() != expected && !(have_source && fields.size() == 4)) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": expected " + std::to_string(expected) +
                               " fields, got " + std::to_string(fields.size()));
    }
    Offer o;
    o.id = fields[0];
    o.volume_mw = parse_field(fields[1], "volume", origin, line_no);
    o.reliability = parse_field(fields[2], "reliability", origin, line_no);
    o.price_per_mw = parse_field(fields[3], "price", origin, line_no);
    if (fields.size() == 5 && !fields[4].empty()) o.source = fields[4];
    if (o.reliability >= 1.0) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": offer '" + o.id +
                               "' claims reliability >= 1; fully reliable offers "
                               "are not accepted in this market");
    }
    offers.push_back(std::move(o));
  }
  if (offers.empty()) throw std::runtime_error(origin + ": no offers");
  try {
    return OfferBook(std::move(offers));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
}

OfferBook read_offers(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return read_offers_json(path);
  }
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_offers_csv(is, path);
}

std::string offers_to_csv(const OfferBook& book) {
  std::ostringstream os;
  os << "id,volume_mw,reliability,price_per_mw,source\n";
  for (const Offer& o : book.offers()) {
    os << o.id << ',' << num(o.volume_mw) << ',' << num(o.reliability) << ','
       << num(o.price_per_mw) << ',' << o.source << '\n';
  }
  return os.str();
}

void write_offers_csv(const std::string& path, const OfferBook& book) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  os << offers_to_csv(book);
}

std::uint64_t offers_fingerprint(const OfferBook& book) {
  std::string text = offers_to_csv(book);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace rap
