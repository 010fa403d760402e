#include "xml_parser.hpp"

#include <cstdlib>

#include "odq/errors.hpp"

namespace odq::detail {

namespace {

constexpr std::size_t kMaxDepth = 256;

class XmlCursor {
public:
    explicit XmlCursor(std::string_view content) : s_(content) {
        if (s_.substr(0, 3) == "\xEF\xBB\xBF")
            s_.remove_prefix(3);
    }

    XmlElement parse_document() {
        skip_misc();
        if (eof() || peek() != '<')
            fail("expected document element");
        XmlElement root = parse_element(0);
        skip_misc();
        if (!eof())
            fail("trailing content after document element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("xml: " + message + " (offset " + std::to_string(pos_) + ")");
    }

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    bool starts_with(std::string_view prefix) const { return s_.substr(pos_, prefix.size()) == prefix; }

    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    }

    void skip_ws() {
        while (!eof() && is_space(peek()))
            ++pos_;
    }

    void skip_until(std::string_view marker, const char* what) {
        const auto found = s_.find(marker, pos_);
        if (found == std::string_view::npos)
            fail(std::string("unterminated ") + what);
        pos_ = found + marker.size();
    }

    // Prolog, comments, PIs and DOCTYPE between/around elements.
    void skip_misc() {
        while (true) {
            skip_ws();
            if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<!DOCTYPE")) {
                int brackets = 0;
                while (!eof()) {
                    const char c = s_[pos_++];
                    if (c == '[')
                        ++brackets;
                    else if (c == ']')
                        --brackets;
                    else if (c == '>' && brackets == 0)
                        break;
                }
            } else {
                return;
            }
        }
    }

    static bool is_name_char(char c) {
        return !is_space(c) && c != '<' && c != '>' && c != '/' && c != '=' && c != '"' &&
               c != '\'';
    }

    std::string parse_name() {
        const std::size_t start = pos_;
        while (!eof() && is_name_char(peek()))
            ++pos_;
        if (pos_ == start)
            fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    void append_decoded(std::string& out, std::string_view raw) {
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] != '&') {
                out.push_back(raw[i++]);
                continue;
            }
            const auto end = raw.find(';', i);
            if (end == std::string_view::npos) {
                out.push_back(raw[i++]);
                continue;
            }
            const std::string_view entity = raw.substr(i + 1, end - i - 1);
            if (entity == "amp")
                out.push_back('&');
            else if (entity == "lt")
                out.push_back('<');
            else if (entity == "gt")
                out.push_back('>');
            else if (entity == "quot")
                out.push_back('"');
            else if (entity == "apos")
                out.push_back('\'');
            else if (!entity.empty() && entity[0] == '#')
                append_codepoint(out, entity.substr(1));
            else {
                // Unknown entity: keep it literally.
                out.push_back('&');
                ++i;
                continue;
            }
            i = end + 1;
        }
    }

    static void append_codepoint(std::string& out, std::string_view digits) {
        unsigned long cp = 0;
        if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X'))
            cp = std::strtoul(std::string(digits.substr(1)).c_str(), nullptr, 16);
        else
            cp = std::strtoul(std::string(digits).c_str(), nullptr, 10);
        if (cp == 0 || cp > 0x10FFFF) {
            out += "\xEF\xBF\xBD";
            return;
        }
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }

    std::string parse_attribute_value() {
        if (eof() || (peek() != '"' && peek() != '\''))
            fail("expected a quoted attribute value");
        const char quote = s_[pos_++];
        const auto end = s_.find(quote, pos_);
        if (end == std::string_view::npos)
            fail("unterminated attribute value");
        std::string value;
        append_decoded(value, s_.substr(pos_, end - pos_));
        pos_ = end + 1;
        return value;
    }

    XmlElement parse_element(std::size_t depth) {
        if (depth > kMaxDepth)
            fail("element nesting too deep");
        ++pos_; // consume '<'
        XmlElement element;
        element.name = parse_name();

        while (true) {
            skip_ws();
            if (eof())
                fail("unterminated start tag for <" + element.name + ">");
            if (starts_with("/>")) {
                pos_ += 2;
                return element;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string attr_name = parse_name();
            skip_ws();
            if (eof() || peek() != '=')
                fail("attribute '" + attr_name + "' is missing its value");
            ++pos_;
            skip_ws();
            element.attributes.emplace_back(std::move(attr_name), parse_attribute_value());
        }

        // Content until the matching close tag.
        while (true) {
            const auto lt = s_.find('<', pos_);
            if (lt == std::string_view::npos)
                fail("missing close tag for <" + element.name + ">");
            append_decoded(element.text, s_.substr(pos_, lt - pos_));
            pos_ = lt;
            if (starts_with("</")) {
                pos_ += 2;
                const std::string name = parse_name();
                if (name != element.name)
                    fail("close tag </" + name + "> does not match <" + element.name + ">");
                skip_ws();
                if (eof() || peek() != '>')
                    fail("malformed close tag");
                ++pos_;
                return element;
            }
            if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<![CDATA[")) {
                pos_ += 9;
                const auto end = s_.find("]]>", pos_);
                if (end == std::string_view::npos)
                    fail("unterminated CDATA section");
                element.text.append(s_.substr(pos_, end - pos_));
                pos_ = end + 3;
            } else if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else {
                element.children.push_back(parse_element(depth + 1));
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

XmlElement parse_xml(std::string_view content) {
    return XmlCursor(content).parse_document();
}

} // namespace odq::detail
