public class Merge01 {
    void merge(Sheet sheet) {
        CellRangeAddress region = new CellRangeAddress(11, 21, 31, 41);
        sheet.addMergedRegion(region);
    }
}
