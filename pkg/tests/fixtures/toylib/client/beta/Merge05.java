public class Merge05 {
    void merge(Sheet sheet) {
        CellRangeAddress region = new CellRangeAddress(15, 25, 35, 45);
        sheet.addMergedRegion(region);
    }
}
