#include "cfx/textprep.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cfx/rng.hpp"

namespace cfx {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Folds one Unicode codepoint to lowercase ASCII. Returns 0 when the
// codepoint is a symbol (becomes a space in the output).
char fold_codepoint(char32_t cp) {
    if (cp < 0x80) {
        char c = static_cast<char>(cp);
        if (std::isalpha(static_cast<unsigned char>(c)))
            return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (std::isdigit(static_cast<unsigned char>(c))) return c;
        return 0;
    }
    switch (cp) {
        case U'á': case U'à': case U'â': case U'ä': case U'ã': case U'å':
        case U'Á': case U'À': case U'Â': case U'Ä': case U'Ã': case U'Å':
            return 'a';
        case U'é': case U'è': case U'ê': case U'ë':
        case U'É': case U'È': case U'Ê': case U'Ë':
            return 'e';
        case U'í': case U'ì': case U'î': case U'ï':
        case U'Í': case U'Ì': case U'Î': case U'Ï':
            return 'i';
        case U'ó': case U'ò': case U'ô': case U'ö': case U'õ':
        case U'Ó': case U'Ò': case U'Ô': case U'Ö': case U'Õ':
            return 'o';
        case U'ú': case U'ù': case U'û': case U'ü':
        case U'Ú': case U'Ù': case U'Û': case U'Ü':
            return 'u';
        case U'ñ': case U'Ñ':
            return 'n';
        case U'ç': case U'Ç':
            return 'c';
        case U'ý': case U'ÿ': case U'Ý':
            return 'y';
        default:
            return 0;
    }
}

// Minimal UTF-8 decode; malformed bytes decode as single symbols.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + extra >= s.size()) {
        // truncated sequence
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += extra + 1;
    return cp;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Token core: the token with every non-alphanumeric byte removed.
std::string token_core(std::string_view tok) {
    std::string core;
    for (char c : tok)
        if (std::isalnum(static_cast<unsigned char>(c))) core.push_back(c);
    return core;
}

}  // namespace

std::string NormalizationConfig::acronym_key(std::string_view token) {
    std::string key;
    key.reserve(token.size());
    for (char c : token) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    while (!key.empty() && key.back() == '.') key.pop_back();
    return key;
}

const std::vector<std::regex>& NormalizationConfig::compiled_code_patterns() const {
    if (!compiled_ready_) {
        compiled_.clear();
        compiled_.reserve(code_patterns.size());
        for (const auto& p : code_patterns) compiled_.emplace_back(p, std::regex::ECMAScript);
        compiled_ready_ = true;
    }
    return compiled_;
}

namespace {

const char* kDefaultCodePattern = "(?=.*[a-zA-Z])(?=.*[0-9])[a-zA-Z0-9]{4,}";

const char* kStopwords =
    // articles, contractions
    "el la los las un una unos unas lo al del "
    // prepositions
    "a ante bajo cabe con contra de desde durante en entre hacia hasta mediante "
    "para por segun sin so sobre tras "
    // conjunctions and common adverbs
    "y o u e ni que pero si no mas muy ya tambien tampoco solo aunque mientras "
    "cuando como donde porque pues luego entonces ademas "
    // pronouns and determiners
    "yo tu usted nosotros vosotros ellos ellas ella me te se nos os le les "
    "mi mis tus su sus nuestro nuestra nuestros nuestras vuestro vuestra "
    "este esta estos estas ese esa esos esas aquel aquella aquellos aquellas "
    "quien quienes cual cuales otro otra otros otras mismo misma todo toda todos todas "
    // ser
    "ser soy eres es somos sois son era eras eramos erais eran fui fuiste fue "
    "fuimos fuisteis fueron sere seras sera seremos sereis seran seria serias "
    "seriamos seriais serian sido siendo sea seas seamos seais sean fuera fueras "
    "fueramos fuerais fueran fuese fueses fuesemos fueseis fuesen "
    // estar
    "estar estoy estas estamos estais estan estaba estabas estabamos estabais "
    "estaban estuve estuviste estuvo estuvimos estuvisteis estuvieron estare "
    "estaras estara estaremos estareis estaran estaria estarias estariamos "
    "estariais estarian estado estando estes estemos esteis esten "
    // hacer
    "hacer hago haces hace hacemos haceis hacen hacia hacias haciamos haciais "
    "hacian hice hiciste hizo hicimos hicisteis hicieron hare haras hara haremos "
    "hareis haran haria harias hariamos hariais harian hecho haciendo haga hagas "
    "hagamos hagais hagan hiciera hicieras hicieramos hicierais hicieran "
    // tener
    "tener tengo tienes tiene tenemos teneis tienen tenia tenias teniamos "
    "teniais tenian tuve tuviste tuvo tuvimos tuvisteis tuvieron tendre tendras "
    "tendra tendremos tendreis tendran tendria tendrias tendriamos tendriais "
    "tendrian tenido teniendo tenga tengas tengamos tengais tengan tuviera "
    "tuvieras tuvieramos tuvierais tuvieran";

// surface -> lemma, optionally tagged ("|v" verb, "|n" noun). The table pins
// domain terms and enterprise names; everything else goes through the plural
// stripper.
struct DictRow {
    const char* surface;
    const char* lemma;
    const char* pos;
};

const DictRow kLemmaRows[] = {
    // fuel / gas stations
    {"gasolineras", "gasolinera", "noun"}, {"gasolinera", "gasolinera", "noun"},
    {"estaciones", "estacion", "noun"},    {"estacion", "estacion", "noun"},
    {"servicios", "servicio", "noun"},     {"servicio", "servicio", "noun"},
    {"combustibles", "combustible", "noun"}, {"combustible", "combustible", "noun"},
    {"carburantes", "carburante", "noun"}, {"carburante", "carburante", "noun"},
    {"repostajes", "repostaje", "noun"},   {"repostaje", "repostaje", "noun"},
    {"gasolinas", "gasolina", "noun"},     {"gasolina", "gasolina", "noun"},
    {"diesel", "diesel", "noun"},          {"litros", "litro", "noun"},
    {"litro", "litro", "noun"},            {"deposito", "deposito", "noun"},
    // transport
    {"taxis", "taxi", "noun"},             {"taxi", "taxi", "noun"},
    {"viajes", "viaje", "noun"},           {"viaje", "viaje", "noun"},
    {"trayectos", "trayecto", "noun"},     {"trayecto", "trayecto", "noun"},
    {"carreras", "carrera", "noun"},       {"carrera", "carrera", "noun"},
    {"licencias", "licencia", "noun"},     {"licencia", "licencia", "noun"},
    {"trenes", "tren", "noun"},            {"tren", "tren", "noun"},
    {"autobuses", "autobus", "noun"},      {"autobus", "autobus", "noun"},
    {"billetes", "billete", "noun"},       {"billete", "billete", "noun"},
    {"viajeros", "viajero", "noun"},       {"viajero", "viajero", "noun"},
    {"tarjetas", "tarjeta", "noun"},       {"tarjeta", "tarjeta", "noun"},
    {"abonos", "abono", "noun"},           {"abono", "abono", "noun"},
    {"cercanias", "cercanias", "noun"},    {"metro", "metro", "noun"},
    {"anden", "anden", "noun"},
    // flights
    {"vuelos", "vuelo", "noun"},           {"vuelo", "vuelo", "noun"},
    {"aerolineas", "aerolinea", "noun"},   {"aerolinea", "aerolinea", "noun"},
    {"aeropuertos", "aeropuerto", "noun"}, {"aeropuerto", "aeropuerto", "noun"},
    {"embarques", "embarque", "noun"},     {"embarque", "embarque", "noun"},
    {"maletas", "maleta", "noun"},         {"maleta", "maleta", "noun"},
    {"equipajes", "equipaje", "noun"},     {"equipaje", "equipaje", "noun"},
    {"aviones", "avion", "noun"},          {"avion", "avion", "noun"},
    {"pasajeros", "pasajero", "noun"},     {"pasajero", "pasajero", "noun"},
    {"reservas", "reserva", "noun"},       {"reserva", "reserva", "noun"},
    // parcel
    {"paquetes", "paquete", "noun"},       {"paquete", "paquete", "noun"},
    {"envios", "envio", "noun"},           {"envio", "envio", "noun"},
    {"mensajeria", "mensajeria", "noun"},  {"paqueteria", "paqueteria", "noun"},
    {"telegrafos", "telegrafo", "noun"},   {"telegrafo", "telegrafo", "noun"},
    {"sellos", "sello", "noun"},           {"sello", "sello", "noun"},
    {"cartas", "carta", "noun"},           {"carta", "carta", "noun"},
    {"oficinas", "oficina", "noun"},       {"oficina", "oficina", "noun"},
    {"repartos", "reparto", "noun"},       {"reparto", "reparto", "noun"},
    // commodities
    {"aguas", "agua", "noun"},             {"agua", "agua", "noun"},
    {"recibos", "recibo", "noun"},         {"recibo", "recibo", "noun"},
    {"facturas", "factura", "noun"},       {"factura", "factura", "noun"},
    {"suministros", "suministro", "noun"}, {"suministro", "suministro", "noun"},
    {"saneamiento", "saneamiento", "noun"}, {"alcantarillado", "alcantarillado", "noun"},
    {"contadores", "contador", "noun"},    {"contador", "contador", "noun"},
    {"consumos", "consumo", "noun"},       {"consumo", "consumo", "noun"},
    {"canon", "canon", "noun"},            {"abastecimiento", "abastecimiento", "noun"},
    {"electricidad", "electricidad", "noun"}, {"energias", "energia", "noun"},
    {"energia", "energia", "noun"},        {"luz", "luz", "noun"},
    {"kilovatios", "kilovatio", "noun"},   {"kilovatio", "kilovatio", "noun"},
    {"potencia", "potencia", "noun"},      {"tarifas", "tarifa", "noun"},
    {"tarifa", "tarifa", "noun"},          {"clientes", "cliente", "noun"},
    {"cliente", "cliente", "noun"},        {"gases", "gas", "noun"},
    {"gas", "gas", "noun"},                {"butano", "butano", "noun"},
    {"propano", "propano", "noun"},        {"calderas", "caldera", "noun"},
    {"caldera", "caldera", "noun"},        {"calefaccion", "calefaccion", "noun"},
    {"instalacion", "instalacion", "noun"},
    // banking noise
    {"pagos", "pago", "noun"},             {"pago", "pago", "noun"},
    {"compras", "compra", "noun"},         {"compra", "compra", "noun"},
    {"transferencias", "transferencia", "noun"}, {"transferencia", "transferencia", "noun"},
    {"domiciliaciones", "domiciliacion", "noun"}, {"domiciliacion", "domiciliacion", "noun"},
    {"referencias", "referencia", "noun"}, {"referencia", "referencia", "noun"},
    {"mandatos", "mandato", "noun"},       {"mandato", "mandato", "noun"},
    {"importes", "importe", "noun"},       {"importe", "importe", "noun"},
    {"titular", "titular", "noun"},
    // invariable words the plural rule would mangle
    {"lunes", "lunes", "noun"},            {"martes", "martes", "noun"},
    {"viernes", "viernes", "noun"},        {"crisis", "crisis", "noun"},
    // enterprise names (proper nouns, pinned to themselves)
    {"repsol", "repsol", "noun"},          {"cepsa", "cepsa", "noun"},
    {"ballenoil", "ballenoil", "noun"},    {"cedipsa", "cedipsa", "noun"},
    {"galp", "galp", "noun"},              {"shell", "shell", "noun"},
    {"cabify", "cabify", "noun"},          {"uber", "uber", "noun"},
    {"bolt", "bolt", "noun"},              {"renfe", "renfe", "noun"},
    {"alsa", "alsa", "noun"},              {"emt", "emt", "noun"},
    {"ryanair", "ryanair", "noun"},        {"iberia", "iberia", "noun"},
    {"vueling", "vueling", "noun"},        {"correos", "correos", "noun"},
    {"seur", "seur", "noun"},              {"mrw", "mrw", "noun"},
    {"dhl", "dhl", "noun"},                {"aqualia", "aqualia", "noun"},
    {"emasesa", "emasesa", "noun"},        {"iberdrola", "iberdrola", "noun"},
    {"endesa", "endesa", "noun"},          {"naturgy", "naturgy", "noun"},
    {"nedgia", "nedgia", "noun"},
    // common verbs, tagged so the enterprise summarizer drops them
    {"pagar", "pagar", "verb"},            {"comprar", "comprar", "verb"},
    {"enviar", "enviar", "verb"},          {"entregar", "entregar", "verb"},
    {"repartir", "repartir", "verb"},      {"viajar", "viajar", "verb"},
    {"conducir", "conducir", "verb"},      {"repostar", "repostar", "verb"},
    {"consumir", "consumir", "verb"},      {"facturar", "facturar", "verb"},
    {"suministrar", "suministrar", "verb"}, {"contratar", "contratar", "verb"},
    {"abonar", "abonar", "verb"},          {"transportar", "transportar", "verb"},
    {"volar", "volar", "verb"},            {"embarcar", "embarcar", "verb"},
    {"reservar", "reservar", "verb"},      {"recargar", "recargar", "verb"},
    {"validar", "validar", "verb"},        {"renovar", "renovar", "verb"},
    {"llenar", "llenar", "verb"},          {"cargar", "cargar", "verb"},
    {"trasladar", "trasladar", "verb"},    {"medir", "medir", "verb"},
    {"calentar", "calentar", "verb"},      {"revisar", "revisar", "verb"},
    {"iluminar", "iluminar", "verb"},      {"certificar", "certificar", "verb"},
    {"remitir", "remitir", "verb"},        {"despegar", "despegar", "verb"},
    {"subir", "subir", "verb"},
};

NormalizationConfig build_default_config() {
    NormalizationConfig cfg;
    cfg.acronyms["s.l"] = "sociedad limitada";
    cfg.acronyms["e.s"] = "estacion de servicio";
    std::istringstream ss(kStopwords);
    std::string w;
    while (ss >> w) cfg.stopwords.insert(w);
    for (const auto& row : kLemmaRows) cfg.lemmas[row.surface] = LemmaEntry{row.lemma, row.pos};
    cfg.code_patterns.push_back(kDefaultCodePattern);
    cfg.hash = fnv1a64("cfxplain-default-normalization-v1");
    return cfg;
}

}  // namespace

const NormalizationConfig& default_normalization_config() {
    static const NormalizationConfig cfg = build_default_config();
    return cfg;
}

NormalizationConfig load_normalization_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open normalization config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    NormalizationConfig cfg;
    for (auto& [k, v] : j.value("acronyms", nlohmann::json::object()).items())
        cfg.acronyms[NormalizationConfig::acronym_key(k)] = v.get<std::string>();
    for (const auto& w : j.value("stopwords", nlohmann::json::array()))
        cfg.stopwords.insert(w.get<std::string>());
    for (auto& [k, v] : j.value("lemmas", nlohmann::json::object()).items()) {
        if (v.is_string()) {
            cfg.lemmas[k] = LemmaEntry{v.get<std::string>(), ""};
        } else {
            cfg.lemmas[k] = LemmaEntry{v.at("lemma").get<std::string>(), v.value("pos", "")};
        }
    }
    for (const auto& p : j.value("code_patterns", nlohmann::json::array()))
        cfg.code_patterns.push_back(p.get<std::string>());
    if (cfg.code_patterns.empty()) cfg.code_patterns.push_back(kDefaultCodePattern);
    cfg.hash = fnv1a64(j.dump());  // canonical dump: keys sorted, stable
    return cfg;
}

namespace textprep {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_ascii_space(text[j])) ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string strip_numeric_and_codes(const std::string& text, const NormalizationConfig& cfg) {
    const auto tokens = tokenize(text);
    const auto& patterns = cfg.compiled_code_patterns();
    std::string out;
    for (const auto& tok : tokens) {
        const std::string core = token_core(tok);
        bool drop = false;
        if (!core.empty() && all_digits(core)) {
            drop = true;
        } else {
            for (const auto& re : patterns) {
                if (std::regex_match(tok, re) || (!core.empty() && std::regex_match(core, re))) {
                    drop = true;
                    break;
                }
            }
        }
        if (!drop) {
            if (!out.empty()) out.push_back(' ');
            out += tok;
        }
    }
    return out;
}

std::string expand_abbreviations(const std::string& text, const NormalizationConfig& cfg) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_ascii_space(text[i])) {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_ascii_space(text[j])) ++j;
        const std::string tok = text.substr(i, j - i);
        auto it = cfg.acronyms.find(NormalizationConfig::acronym_key(tok));
        out += (it != cfg.acronyms.end()) ? it->second : tok;
        i = j;
    }
    return out;
}

std::string strip_symbols_diacritics(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        char folded;
        if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v') {
            folded = 0;
        } else {
            folded = fold_codepoint(cp);
        }
        if (folded == 0) {
            pending_space = true;
        } else {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(folded);
        }
    }
    return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const NormalizationConfig& cfg) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!cfg.stopwords.contains(t)) out.push_back(t);
    return out;
}

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Rule-based fallback: Spanish plural stripping with consonant guards.
std::string strip_plural(const std::string& t) {
    const std::size_t n = t.size();
    if (n >= 5 && t.compare(n - 2, 2, "es") == 0) {
        char guard = t[n - 3];
        if ((guard == 'd' || guard == 'l' || guard == 'n' || guard == 'r' || guard == 'z' ||
             guard == 'j') &&
            n - 2 >= 3)
            return t.substr(0, n - 2);
    }
    if (n >= 4 && t.back() == 's' && is_vowel(t[n - 2]) && n - 1 >= 3) return t.substr(0, n - 1);
    return t;
}

}  // namespace

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const NormalizationConfig& cfg) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        auto it = cfg.lemmas.find(t);
        out.push_back(it != cfg.lemmas.end() ? it->second.lemma : strip_plural(t));
    }
    return out;
}

std::vector<std::string> preprocess(const std::string& text, const NormalizationConfig& cfg) {
    std::string s = expand_abbreviations(text, cfg);
    s = strip_symbols_diacritics(s);
    s = strip_numeric_and_codes(s, cfg);
    auto tokens = tokenize(s);
    tokens = remove_stopwords(tokens, cfg);
    return lemmatize(tokens, cfg);
}

ProcessedDoc preprocess_doc(const std::string& source_id, const std::string& text,
                            const NormalizationConfig& cfg) {
    return ProcessedDoc{source_id, preprocess(text, cfg)};
}

}  // namespace textprep
}  // namespace cfx
