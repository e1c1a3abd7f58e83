#include "fmea/worksheet.hpp"

#include <string>
#include <utility>

namespace fmea {

namespace {

FmeaEntry summary_row(std::string component, std::string failure_mode, RatingTriple triple,
                      std::string effect, ClassLabel declared) {
    FmeaEntry e;
    e.component = std::move(component);
    e.failure_mode = std::move(failure_mode);
    e.triple = triple;
    e.effect = std::move(effect);
    e.declared_classification = declared;
    return e;
}

Worksheet build_fixture() {
    Worksheet ws;
    ws.title = "Microgrid cyber-physical components";

    // Full report rows: the three highest-RPN components, text carried as published.
    ws.entries.push_back(FmeaEntry{
        "Energy Management System (EMS)",
        "While EMS is not a component, failure of one or more critical components listed below "
        "can lead to the failure of the EMS. Along with the cyberattacks listed below, some of "
        "the other factors that can lead to the EMS failure are listed here: insecure "
        "inter-network communication channel, default accounts on the components, default and "
        "weak passwords, weak authentication, weak coding practices, man-in-the-middle attack, "
        "weak/ misconfigured firewalls, exploitable ports, social engineering, and data buffer "
        "overflow because of the unchecked data stream",
        {10, 7, 8},
        "MG islanding without the grid operators' consent, false tripping of relays/ circuit "
        "breakers, overloading on the generation and distribution system, voltage/frequency "
        "violations, failed system protection, and unstable system",
        "Hefty fines imposed by the government because of voltage/ frequency violations, loss of "
        "power to critical loads, grid instability, and cascading failures leading to MG failure",
        "Unauthorized access to key components, lack of penetration testing, weak firewall/ "
        "antivirus, weak encryption, and lack of multifactor authentication",
        "Strict vulnerability and incident handling protocols, secured system architecture, "
        "removing unnecessary software, blocking unused ports, hardened account management, and "
        "access control policies, appropriate data backup and restore measures, intrusion "
        "detection systems, regular security patches, and updates, strong encryption techniques, "
        "strong passwords, using proxy servers, and strict file system access policies",
        "Smart inverters, smart meters, comparing with historical SCADA measurements, intrusion "
        "detection software, real-time intrusion detection based on advanced machine learning "
        "algorithms, and key data sources that could predict potential attacks",
        ClassLabel::Catastrophic,
    });
    ws.entries.push_back(FmeaEntry{
        "Human-machine interface (HMI)",
        "Hackers tend to target the HMI as the MG operators use this to interact with the SCADA "
        "system. Typical attacks on the HMI include malware, Stuxnet, insider threat, sniffer "
        "attack, man-in-the-middle attack, code injection, memory corruption, insecure default "
        "settings, plain text SCADA protocol, key stroking software, and network flooding",
        {8, 6, 7},
        "Unauthorized access to critical components by which hacker can change the settings "
        "(opening and closing of circuit breakers), permanent damage to the components, and loss "
        "of critical information",
        "Violation of regulations imposed by governments can lead to hefty fines, reputational "
        "damage to MG owners and systems offline",
        "Weak passwords, lack of relevant knowledge, default system settings, external device "
        "connected to network, suspicious emails, using the infected external storage device, "
        "and malware",
        "Segregation and increased perimeter security, using honeypots to find vulnerabilities in "
        "the system, advanced firewall installation, intrusion detection systems, demilitarized "
        "zone to increase security at MG site, using virtual private networks, and encryption",
        "Periodical risk assessment, intrusion detection software installation, MAC address "
        "locking, risk auditing, using machine learning algorithms, strong passwords, and "
        "relevant personnel training",
        ClassLabel::Critical,
    });
    ws.entries.push_back(FmeaEntry{
        "Smart meter",
        "Power denial attack, power theft attack, grid disruption attack, internet protocol "
        "misconfiguration, memory corruption, promotion request overflow, node log overflow, "
        "identity theft, overflow in the local switch identifier, intercepting traffic, central "
        "processing unit overload, traffic reinjection, physical layer jamming, access control "
        "jamming, physical attack",
        {7, 5, 6},
        "Power outage to customers and critical loads, power theft from the utility, instability "
        "in the grid, widespread power loss, data loss, and financial loss to MG and utility grid "
        "operators",
        "Power outage and monetary loss",
        "Jamming the communication channel, control media access jamming, vulnerabilities in the "
        "firewall, complex network topology, older switches, outdated firmware, and software",
        "Electromagnetic field radiation shield, Strong firewall, command source authentication, "
        "encryption, load drop detection, and implementing head-end access controls",
        "Implementing signature-based and anomaly-based intrusion detection software",
        ClassLabel::Marginal,
    });

    // Summary rows: ratings and declared classes as published. Failure-mode and
    // effect text is an abbreviated paraphrase of each component's role in the
    // microgrid communication layer; no detailed narrative exists for these rows.
    ws.entries.push_back(summary_row(
        "Database", "Tampering with or theft of stored operational data", {4, 6, 4},
        "Loss or corruption of historical microgrid operating records", ClassLabel::Marginal));
    ws.entries.push_back(summary_row(
        "Server", "Unauthorized access to the operational data server", {7, 6, 4},
        "Operational data unavailable or altered for the EMS", ClassLabel::Marginal));
    ws.entries.push_back(summary_row(
        "Intelligent electronic device (IED)",
        "Spoofed or manipulated relay and controller data sent to the EMS", {7, 5, 4},
        "EMS acts on false relay and controller measurements", ClassLabel::Critical));
    ws.entries.push_back(summary_row(
        "Generator controller", "Compromise of generator controller monitoring data", {6, 5, 4},
        "Incorrect dispatch of distributed generation", ClassLabel::Critical));
    ws.entries.push_back(summary_row(
        "Automatic transfer switch (ATS)", "Malicious switching command injection", {5, 4, 4},
        "Unintended transfer between grid-tied and islanded supply", ClassLabel::Marginal));
    ws.entries.push_back(summary_row(
        "Renewable energy controller", "Compromise of renewable controller monitoring data",
        {6, 5, 4}, "Incorrect control of renewable generation output", ClassLabel::Marginal));
    ws.entries.push_back(summary_row(
        "Remote terminal unit (RTU)", "Interception or falsification of field device data",
        {5, 7, 6}, "EMS loses accurate visibility of field devices", ClassLabel::Critical));
    ws.entries.push_back(summary_row(
        "Phasor measurement unit (PMU)", "Falsified phasor data sent to the EMS", {5, 4, 6},
        "Wrong state estimation and protection decisions", ClassLabel::Marginal));
    ws.entries.push_back(summary_row(
        "Disconnect switch", "Unauthorized remote operation of the switch", {7, 4, 4},
        "Unplanned isolation of microgrid sections", ClassLabel::Marginal));
    ws.entries.push_back(summary_row(
        "PHEV", "Malicious software update or charging-station interaction", {9, 5, 4},
        "Vehicle and charging station behave unsafely", ClassLabel::Catastrophic));
    ws.entries.push_back(summary_row(
        "PHEV supply equipment",
        "Falsified charging and discharging information sent to the EMS", {8, 5, 4},
        "Wrong charging schedules and unmanaged load", ClassLabel::Critical));
    ws.entries.push_back(summary_row(
        "Relay", "Malicious protection setting change or false trip command", {8, 6, 4},
        "Failed or spurious protection operation", ClassLabel::Marginal));
    return ws;
}

}  // namespace

const Worksheet& paper_fixture() {
    static const Worksheet fixture = build_fixture();
    return fixture;
}

}  // namespace fmea
